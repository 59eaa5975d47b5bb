//! Exponent vectors of power products.

use std::cmp::Ordering;

/// Exponent vector; the length always equals the variable count of the
/// enclosing context.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial {
    exps: Vec<u32>,
}

impl Monomial {
    /// The constant monomial `1`.
    pub fn unit(nvars: usize) -> Self {
        Monomial {
            exps: vec![0; nvars],
        }
    }

    pub fn var(nvars: usize, index: usize) -> Self {
        Self::var_pow(nvars, index, 1)
    }

    pub fn var_pow(nvars: usize, index: usize, exp: u32) -> Self {
        debug_assert!(index < nvars);
        let mut exps = vec![0; nvars];
        exps[index] = exp;
        Monomial { exps }
    }

    pub fn from_exps(exps: Vec<u32>) -> Self {
        Monomial { exps }
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn exp(&self, index: usize) -> u32 {
        self.exps[index]
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    /// Total degree restricted to the variable block `[start, start+len)`.
    pub fn block_degree(&self, start: usize, len: usize) -> u32 {
        self.exps[start..start + len].iter().sum()
    }

    pub fn is_unit(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.nvars(), other.nvars());
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    /// Whether `self` divides `other`.
    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `other / self`, when `self` divides `other`.
    pub fn div_into(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        Some(Monomial {
            exps: other
                .exps
                .iter()
                .zip(&self.exps)
                .map(|(b, a)| b - a)
                .collect(),
        })
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| *a.max(b))
                .collect(),
        }
    }

    pub fn coprime(&self, other: &Monomial) -> bool {
        self.exps
            .iter()
            .zip(&other.exps)
            .all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Extends the exponent vector with zeros up to `nvars`.
    pub fn pad(&self, nvars: usize) -> Monomial {
        debug_assert!(nvars >= self.nvars());
        let mut exps = self.exps.clone();
        exps.resize(nvars, 0);
        Monomial { exps }
    }

    /// Moves variable `i` to `map[i]` in a fresh vector of `out_nvars` slots.
    pub fn remap(&self, map: &[usize], out_nvars: usize) -> Monomial {
        let mut exps = vec![0; out_nvars];
        for (i, &e) in self.exps.iter().enumerate() {
            if e > 0 {
                exps[map[i]] += e;
            }
        }
        Monomial { exps }
    }
}

// The intrinsic order is graded lexicographic with variable 0 strongest;
// this is the default order of every context in the crate.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        debug_assert_eq!(self.nvars(), other.nvars());
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => self.exps.cmp(&other.exps),
            ord => ord,
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// All monomials of exact degree `d` supported on the block
/// `[start, start+len)` of a vector with `nvars` slots.
pub fn block_monomials_of_degree(nvars: usize, start: usize, len: usize, d: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut current = vec![0u32; len];
    fn rec(pos: usize, remaining: u32, current: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if pos + 1 == current.len() {
            current[pos] = remaining;
            out.push(current.clone());
            current[pos] = 0;
            return;
        }
        for e in (0..=remaining).rev() {
            current[pos] = e;
            rec(pos + 1, remaining - e, current, out);
        }
        current[pos] = 0;
    }
    if len == 0 {
        return out;
    }
    let mut raw = Vec::new();
    rec(0, d, &mut current, &mut raw);
    for block in raw {
        let mut exps = vec![0u32; nvars];
        exps[start..start + len].copy_from_slice(&block);
        out.push(Monomial::from_exps(exps));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graded_lex_prefers_degree_then_low_index() {
        let x1sq = Monomial::var_pow(3, 0, 2);
        let x2sq = Monomial::var_pow(3, 1, 2);
        let x3 = Monomial::var(3, 2);
        assert!(x1sq > x2sq);
        assert!(x2sq > x3);
    }

    #[test]
    fn division_and_lcm() {
        let a = Monomial::from_exps(vec![2, 1, 0]);
        let b = Monomial::from_exps(vec![1, 0, 0]);
        assert!(b.divides(&a));
        assert_eq!(b.div_into(&a).unwrap(), Monomial::from_exps(vec![1, 1, 0]));
        assert_eq!(a.lcm(&b), a);
        assert!(b.coprime(&Monomial::var(3, 2)));
    }

    #[test]
    fn block_enumeration_counts() {
        // degree-2 monomials in a 3-variable block: C(4,2) = 6
        let ms = block_monomials_of_degree(6, 3, 3, 2);
        assert_eq!(ms.len(), 6);
        assert!(ms
            .iter()
            .all(|m| m.block_degree(3, 3) == 2 && m.block_degree(0, 3) == 0));
    }
}
