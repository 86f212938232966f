//! Finite abelian groups as direct sums of cyclic groups.
//!
//! Elements are stored as a single mixed-radix index with the first factor most
//! significant, so comparing indices is the lexicographic order on coordinate tuples.

mod maps;

pub use maps::*;

use std::fmt;

use crate::error::{Error, Result};

/// Largest group order accepted anywhere in the crate.
pub const MAX_ORDER: usize = 1 << 20;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct GroupElement(pub u32);

impl GroupElement {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AbelianGroup {
    factors: Vec<u32>,
    order: usize,
}

impl AbelianGroup {
    pub fn new(factors: &[u32]) -> Result<AbelianGroup> {
        if factors.is_empty() {
            return Err(Error::pre("a group needs at least one cyclic factor"));
        }
        let mut order: usize = 1;
        for &n in factors {
            if n < 2 {
                return Err(Error::pre(format!("cyclic factor Z{n} is trivial or empty")));
            }
            order = order.saturating_mul(n as usize);
        }
        if order > MAX_ORDER {
            return Err(Error::DeskScale { what: "group order", limit: MAX_ORDER, actual: order });
        }
        Ok(AbelianGroup { factors: factors.to_vec(), order })
    }

    pub fn cyclic(n: u32) -> Result<AbelianGroup> {
        AbelianGroup::new(&[n])
    }

    /// Parses `Z6`, `Z2xZ4`, `Z2xZ2xZ2`.
    pub fn parse(spec: &str) -> Result<AbelianGroup> {
        let mut factors = Vec::new();
        for part in spec.trim().split(['x', 'X']) {
            let digits = part.trim().strip_prefix('Z').ok_or_else(|| Error::parse(1, format!("bad group `{spec}`")))?;
            factors.push(digits.parse().map_err(|_| Error::parse(1, format!("bad group `{spec}`")))?);
        }
        AbelianGroup::new(&factors)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn factors(&self) -> &[u32] {
        &self.factors
    }

    pub fn zero(&self) -> GroupElement {
        GroupElement(0)
    }

    pub fn is_zero(&self, x: GroupElement) -> bool {
        x.0 == 0
    }

    pub fn elements(&self) -> impl Iterator<Item = GroupElement> {
        (0..self.order as u32).map(GroupElement)
    }

    pub fn nonzero_elements(&self) -> impl Iterator<Item = GroupElement> {
        (1..self.order as u32).map(GroupElement)
    }

    pub fn coords(&self, x: GroupElement) -> Vec<u32> {
        let mut out = vec![0; self.factors.len()];
        let mut r = x.0;
        for (i, &n) in self.factors.iter().enumerate().rev() {
            out[i] = r % n;
            r /= n;
        }
        out
    }

    pub fn element(&self, coords: &[i64]) -> Result<GroupElement> {
        if coords.len() != self.factors.len() {
            return Err(Error::GroupMismatch(format!("{} coordinates for {}", coords.len(), self)));
        }
        let mut idx: u32 = 0;
        for (&c, &n) in coords.iter().zip(&self.factors) {
            idx = idx * n + c.rem_euclid(n as i64) as u32;
        }
        Ok(GroupElement(idx))
    }

    /// The image of an integer under the diagonal map `k -> (k, k, ..., k)`.
    pub fn from_int(&self, k: i64) -> GroupElement {
        self.element(&vec![k; self.factors.len()]).expect("arity matches")
    }

    pub fn contains(&self, x: GroupElement) -> bool {
        x.index() < self.order
    }

    fn zip(&self, x: GroupElement, y: GroupElement, op: impl Fn(u32, u32, u32) -> u32) -> GroupElement {
        let (mut a, mut b) = (x.0, y.0);
        let mut idx = 0;
        let mut stride = 1;
        for &n in self.factors.iter().rev() {
            idx += op(a % n, b % n, n) * stride;
            stride *= n;
            a /= n;
            b /= n;
        }
        GroupElement(idx)
    }

    pub fn add(&self, x: GroupElement, y: GroupElement) -> GroupElement {
        if self.factors.len() == 1 {
            return GroupElement((x.0 + y.0) % self.factors[0]);
        }
        self.zip(x, y, |a, b, n| (a + b) % n)
    }

    pub fn sub(&self, x: GroupElement, y: GroupElement) -> GroupElement {
        if self.factors.len() == 1 {
            let n = self.factors[0];
            return GroupElement((x.0 + n - y.0) % n);
        }
        self.zip(x, y, |a, b, n| (a + n - b) % n)
    }

    pub fn neg(&self, x: GroupElement) -> GroupElement {
        self.sub(GroupElement(0), x)
    }

    /// `k * x` for any integer `k`.
    pub fn scale(&self, x: GroupElement, k: i64) -> GroupElement {
        let c: Vec<i64> = self
            .coords(x)
            .iter()
            .zip(&self.factors)
            .map(|(&a, &n)| (a as i64 * k.rem_euclid(n as i64)) % n as i64)
            .collect();
        self.element(&c).expect("arity matches")
    }

    /// `+x` or `-x` according to a direction bit.
    pub fn signed(&self, x: GroupElement, dir: i8) -> GroupElement {
        if dir >= 0 {
            x
        } else {
            self.neg(x)
        }
    }

    pub fn double(&self, x: GroupElement) -> GroupElement {
        self.add(x, x)
    }

    pub fn sum<I: IntoIterator<Item = GroupElement>>(&self, items: I) -> GroupElement {
        items.into_iter().fold(self.zero(), |s, x| self.add(s, x))
    }

    pub fn element_order(&self, x: GroupElement) -> usize {
        let mut k = 1;
        let mut y = x;
        while !self.is_zero(y) {
            y = self.add(y, x);
            k += 1;
        }
        k
    }

    pub fn has_element_of_order_two(&self) -> bool {
        self.factors.iter().any(|n| n % 2 == 0)
    }

    /// All `a` with `2a = x`, in increasing order.
    pub fn halves(&self, x: GroupElement) -> Vec<GroupElement> {
        self.elements().filter(|&a| self.double(a) == x).collect()
    }

    /// Parses `c1,c2,...` into an element.
    pub fn parse_element(&self, s: &str) -> Result<GroupElement> {
        let c: Vec<i64> = s
            .split(',')
            .map(|t| t.trim().parse::<i64>().map_err(|_| Error::parse(1, format!("bad group element `{s}`"))))
            .collect::<Result<_>>()?;
        let g = self.element(&c)?;
        for (&v, &n) in c.iter().zip(&self.factors) {
            if v < 0 || v >= n as i64 {
                return Err(Error::parse(1, format!("coordinate {v} outside Z{n}")));
            }
        }
        Ok(g)
    }

    pub fn format_element(&self, x: GroupElement) -> String {
        self.coords(x).iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",")
    }

    pub fn minimal_subgroup(&self) -> Result<MinimalSubgroup> {
        MinimalSubgroup::of(self)
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.factors.iter().map(|n| format!("Z{n}")).collect();
        write!(f, "{}", parts.join("x"))
    }
}

pub fn smallest_prime_factor(n: usize) -> usize {
    (2..=n).find(|&p| n.is_multiple_of(p)).unwrap_or(n)
}

pub fn is_prime(n: usize) -> bool {
    n >= 2 && smallest_prime_factor(n) == n
}

/// The subgroup of smallest prime order `p`, generated by `(n_i / p) e_i` for the
/// first factor `i` divisible by `p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinimalSubgroup {
    group: AbelianGroup,
    prime: u32,
    factor: usize,
    generator: GroupElement,
    quotient: Option<AbelianGroup>,
}

impl MinimalSubgroup {
    pub fn of(group: &AbelianGroup) -> Result<MinimalSubgroup> {
        if is_prime(group.order()) {
            return Err(Error::pre(format!("{group} has prime order and no proper nontrivial subgroup")));
        }
        let p = smallest_prime_factor(group.order()) as u32;
        let factor = group.factors.iter().position(|n| n % p == 0).expect("p divides some factor");
        let mut c = vec![0i64; group.factors.len()];
        c[factor] = (group.factors[factor] / p) as i64;
        let generator = group.element(&c)?;
        let mut qf = group.factors.clone();
        qf[factor] /= p;
        let qf: Vec<u32> = qf.into_iter().filter(|&n| n > 1).collect();
        let quotient = if qf.is_empty() { None } else { Some(AbelianGroup::new(&qf)?) };
        Ok(MinimalSubgroup { group: group.clone(), prime: p, factor, generator, quotient })
    }

    pub fn prime(&self) -> u32 {
        self.prime
    }

    pub fn generator(&self) -> GroupElement {
        self.generator
    }

    pub fn elements(&self) -> Vec<GroupElement> {
        (0..self.prime as i64).map(|k| self.group.scale(self.generator, k)).collect()
    }

    pub fn contains(&self, x: GroupElement) -> bool {
        let c = self.group.coords(x);
        let step = self.group.factors[self.factor] / self.prime;
        c.iter().enumerate().all(|(i, &v)| if i == self.factor { v % step == 0 } else { v == 0 })
    }

    /// The least element of `x + N`.
    pub fn coset_rep(&self, x: GroupElement) -> GroupElement {
        let mut c: Vec<i64> = self.group.coords(x).iter().map(|&v| v as i64).collect();
        let step = (self.group.factors[self.factor] / self.prime) as i64;
        c[self.factor] %= step;
        self.group.element(&c).expect("arity matches")
    }

    pub fn same_coset(&self, x: GroupElement, y: GroupElement) -> bool {
        self.coset_rep(x) == self.coset_rep(y)
    }

    /// The quotient `A / N`, or `None` when it is trivial.
    pub fn quotient(&self) -> Option<&AbelianGroup> {
        self.quotient.as_ref()
    }

    /// The coset of `x`, as an element of the quotient.
    pub fn project(&self, x: GroupElement) -> GroupElement {
        let Some(q) = &self.quotient else { return GroupElement(0) };
        let step = self.group.factors[self.factor] / self.prime;
        let c: Vec<i64> = self
            .group
            .coords(x)
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != self.factor || step > 1)
            .map(|(i, &v)| if i == self.factor { (v % step) as i64 } else { v as i64 })
            .collect();
        q.element(&c).expect("arity matches")
    }

    /// The least element of the coset named by a quotient element.
    pub fn lift(&self, y: GroupElement) -> GroupElement {
        let Some(q) = &self.quotient else { return self.group.zero() };
        let step = self.group.factors[self.factor] / self.prime;
        let mut qc = q.coords(y).into_iter();
        let c: Vec<i64> = (0..self.group.factors.len())
            .map(|i| if i == self.factor && step == 1 { 0 } else { qc.next().expect("arity matches") as i64 })
            .collect();
        self.group.element(&c).expect("arity matches")
    }

    /// The element `k` of `N`, i.e. `k` times the generator.
    pub fn nth(&self, k: i64) -> GroupElement {
        self.group.scale(self.generator, k)
    }

    /// Which multiple of the generator `x` is, if `x` lies in `N`.
    pub fn index_of(&self, x: GroupElement) -> Option<u32> {
        (0..self.prime).find(|&k| self.nth(k as i64) == x)
    }
}
