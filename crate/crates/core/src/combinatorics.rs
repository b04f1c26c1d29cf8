//! Partitions, symmetric-group characters, Schur expansion data, generalized
//! Pochhammer symbols, the Gindikin-Koecher Gamma function, and generalized
//! binomial coefficients for the Hermitian cone (structure constant a = 2).

use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::fmt;

use crate::error::{HermlagError, Result};
use crate::rational::{rat, solve_exact, GaussRat, Rat};

/// Weakly decreasing tuple of non-negative integers, trailing zeros explicit.
/// The length is the rank of the ambient cone.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Partition(Vec<u32>);

impl Partition {
    /// Build a partition padded to length `n`. Fails if not weakly decreasing
    /// or longer than `n`.
    pub fn new(parts: &[u32], n: usize) -> Result<Self> {
        if parts.len() > n {
            return Err(HermlagError::Domain(format!(
                "partition {:?} longer than rank {}",
                parts, n
            )));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(HermlagError::Domain(format!(
                "partition {:?} not weakly decreasing",
                parts
            )));
        }
        let mut v = parts.to_vec();
        v.resize(n, 0);
        Ok(Partition(v))
    }

    pub fn zero(n: usize) -> Self {
        Partition(vec![0; n])
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.iter().all(|&p| p == 0)
    }

    pub fn weight(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Parts with trailing zeros stripped.
    pub fn stripped(&self) -> &[u32] {
        let k = self.0.iter().rposition(|&p| p > 0).map_or(0, |i| i + 1);
        &self.0[..k]
    }

    /// m ± γ_j (1-based j): add or remove one box in row j. Returns `None`
    /// when the result is not a valid partition; the corresponding sum term
    /// is dropped by callers.
    pub fn shift(&self, j: usize, dir: i32) -> Option<Partition> {
        if j == 0 || j > self.0.len() {
            return None;
        }
        let mut v = self.0.clone();
        let idx = j - 1;
        if dir > 0 {
            v[idx] += 1;
        } else {
            if v[idx] == 0 {
                return None;
            }
            v[idx] -= 1;
        }
        if v.windows(2).any(|w| w[0] < w[1]) {
            return None;
        }
        Some(Partition(v))
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", p)?;
        }
        write!(f, ")")
    }
}

/// All partitions of length <= n and weight <= w_max, padded to length n,
/// ordered by (weight, reverse-lexicographic).
pub fn enumerate_partitions(n: usize, w_max: u32) -> Vec<Partition> {
    let mut out = Vec::new();
    for w in 0..=w_max {
        let mut level = Vec::new();
        gen_partitions(w, w, n, &mut Vec::new(), &mut level);
        level.sort_by(|a: &Partition, b: &Partition| b.0.cmp(&a.0));
        out.extend(level);
    }
    out
}

fn gen_partitions(rem: u32, max_part: u32, slots: usize, acc: &mut Vec<u32>, out: &mut Vec<Partition>) {
    if rem == 0 {
        let mut v = acc.clone();
        v.resize(acc.len() + slots, 0);
        let total = v.len();
        v.truncate(total);
        // pad to original rank: acc.len() + slots == n always on entry
        out.push(Partition(v));
        return;
    }
    if slots == 0 {
        return;
    }
    let hi = rem.min(max_part);
    for p in (1..=hi).rev() {
        acc.push(p);
        gen_partitions(rem - p, p, slots - 1, acc, out);
        acc.pop();
    }
}

/// Generalized Pochhammer symbol for the Hermitian cone:
/// (nu)_m = prod_j prod_{i=0}^{m_j-1} (nu - (j-1) + i). Exact.
pub fn pochhammer_cone(nu: &Rat, m: &Partition) -> Rat {
    let mut acc = Rat::one();
    for (j0, &mj) in m.parts().iter().enumerate() {
        for i in 0..mj {
            acc *= nu - rat(j0 as i64) + rat(i as i64);
        }
    }
    acc
}

/// Gindikin-Koecher Gamma function of the cone of positive-definite
/// Hermitian n x n matrices, via the closed form
/// pi^{n(n-1)/2} * prod_{j=1}^{n} Gamma(nu - j + 1).
///
/// The defining integral is cross-checked against this value by the
/// quadrature layer.
pub fn gindikin_gamma(nu: f64, n: usize) -> Result<f64> {
    if nu <= n as f64 - 1.0 {
        return Err(HermlagError::Domain(format!(
            "gindikin_gamma requires nu > n-1 (nu={nu}, n={n})"
        )));
    }
    let mut acc = std::f64::consts::PI.powi((n * (n - 1) / 2) as i32);
    for j in 1..=n {
        acc *= statrs::function::gamma::gamma(nu - j as f64 + 1.0);
    }
    Ok(acc)
}

/// Exact ratio Gamma_Omega(m + nu) / Gamma_Omega(nu) = prod_j
/// (nu - j + 1)(nu - j + 2)...(nu - j + m_j), a rational in nu.
pub fn gindikin_ratio(nu: &Rat, m: &Partition) -> Rat {
    let mut acc = Rat::one();
    for (j0, &mj) in m.parts().iter().enumerate() {
        let j = (j0 + 1) as i64;
        for i in 1..=(mj as i64) {
            acc *= nu - rat(j) + rat(i);
        }
    }
    acc
}

/// Irreducible symmetric-group character chi^lambda(mu) via the
/// Murnaghan-Nakayama border-strip recursion (beta-number form).
pub fn character(lambda: &Partition, mu: &Partition) -> Result<i64> {
    if lambda.weight() != mu.weight() {
        return Err(HermlagError::Domain(format!(
            "character: |{}| != |{}|",
            lambda, mu
        )));
    }
    let lam: Vec<u32> = lambda.stripped().to_vec();
    let mut mu_parts: Vec<u32> = mu.stripped().to_vec();
    mu_parts.sort_unstable_by(|a, b| b.cmp(a));
    Ok(mn_recurse(&lam, &mu_parts))
}

fn mn_recurse(lambda: &[u32], mu: &[u32]) -> i64 {
    if mu.is_empty() {
        return 1;
    }
    let r = mu[0];
    let rest = &mu[1..];
    let len = lambda.len();
    // beta numbers: strictly decreasing
    let beta: Vec<i64> = lambda
        .iter()
        .enumerate()
        .map(|(i, &p)| p as i64 + (len - 1 - i) as i64)
        .collect();
    let mut total = 0i64;
    for i in 0..len {
        let b = beta[i] - r as i64;
        if b < 0 || beta.contains(&b) {
            continue;
        }
        // elements strictly between b and beta[i] determine the strip height
        let jumped = beta.iter().filter(|&&x| b < x && x < beta[i]).count();
        let sign = if jumped % 2 == 0 { 1 } else { -1 };
        let mut nb = beta.clone();
        nb[i] = b;
        nb.sort_unstable_by(|a, c| c.cmp(a));
        let new_lambda: Vec<u32> = nb
            .iter()
            .enumerate()
            .map(|(k, &x)| (x - (len - 1 - k) as i64) as u32)
            .collect();
        let trimmed: Vec<u32> = {
            let k = new_lambda.iter().rposition(|&p| p > 0).map_or(0, |t| t + 1);
            new_lambda[..k].to_vec()
        };
        total += sign * mn_recurse(&trimmed, rest);
    }
    total
}

/// Centralizer order z_mu = prod_k k^{a_k} a_k! where a_k is the number of
/// parts of mu equal to k.
pub fn centralizer_order(mu: &Partition) -> Rat {
    let mut mult: BTreeMap<u32, u32> = BTreeMap::new();
    for &p in mu.stripped() {
        *mult.entry(p).or_insert(0) += 1;
    }
    let mut acc = Rat::one();
    for (k, a) in mult {
        for _ in 0..a {
            acc *= rat(k as i64);
        }
        for f in 1..=a {
            acc *= rat(f as i64);
        }
    }
    acc
}

/// Power-sum expansion s_lambda = sum_mu chi^lambda(mu) p_mu / z_mu,
/// as an exact coefficient map over partitions mu of |lambda|.
pub fn schur_in_powersums(lambda: &Partition) -> BTreeMap<Partition, Rat> {
    let w = lambda.weight();
    let mut out = BTreeMap::new();
    if w == 0 {
        out.insert(Partition::zero(0), Rat::one());
        return out;
    }
    for mu in enumerate_partitions(w as usize, w) {
        if mu.weight() != w {
            continue;
        }
        let chi = character(lambda, &mu).expect("weights match");
        if chi == 0 {
            continue;
        }
        let coeff = rat(chi) / centralizer_order(&mu);
        out.insert(mu, coeff);
    }
    out
}

/// s_lambda(1,...,1) in n variables: Weyl dimension formula
/// prod_{i<j} (lambda_i - lambda_j + j - i) / (j - i).
pub fn schur_dim(lambda: &Partition, n: usize) -> Result<Rat> {
    if lambda.stripped().len() > n {
        return Err(HermlagError::Domain(format!(
            "schur_dim: partition {} longer than rank {}",
            lambda, n
        )));
    }
    let mut l = lambda.parts().to_vec();
    l.resize(n, 0);
    let mut acc = Rat::one();
    for i in 0..n {
        for j in (i + 1)..n {
            let num = l[i] as i64 - l[j] as i64 + (j - i) as i64;
            acc *= rat_frac_i(num, (j - i) as i64);
        }
    }
    Ok(acc)
}

fn rat_frac_i(n: i64, d: i64) -> Rat {
    rat(n) / rat(d)
}

/// Symmetric (not symmetrized) polynomial in n eigenvalue variables with
/// exact rational coefficients; used for the spherical shift expansion.
#[derive(Clone, PartialEq, Debug)]
pub(crate) struct SymPoly {
    pub n_vars: usize,
    pub terms: BTreeMap<Vec<u32>, Rat>,
}

impl SymPoly {
    pub fn zero(n_vars: usize) -> Self {
        SymPoly {
            n_vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(n_vars: usize, c: Rat) -> Self {
        let mut p = SymPoly::zero(n_vars);
        if !c.is_zero() {
            p.terms.insert(vec![0; n_vars], c);
        }
        p
    }

    pub fn add(&self, other: &SymPoly) -> SymPoly {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            let entry = out.terms.entry(e.clone()).or_insert_with(Rat::zero);
            *entry += c;
        }
        out.terms.retain(|_, v| !v.is_zero());
        out
    }

    pub fn mul(&self, other: &SymPoly) -> SymPoly {
        let mut out = SymPoly::zero(self.n_vars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let expo: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                let entry = out.terms.entry(expo).or_insert_with(Rat::zero);
                *entry += c1 * c2;
            }
        }
        out.terms.retain(|_, v| !v.is_zero());
        out
    }

    pub fn scale(&self, c: &Rat) -> SymPoly {
        if c.is_zero() {
            return SymPoly::zero(self.n_vars);
        }
        SymPoly {
            n_vars: self.n_vars,
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    /// Power sum p_k = sum_i x_i^k (p_0 = n).
    pub fn powersum(k: u32, n_vars: usize) -> SymPoly {
        if k == 0 {
            return SymPoly::constant(n_vars, rat(n_vars as i64));
        }
        let mut p = SymPoly::zero(n_vars);
        for i in 0..n_vars {
            let mut e = vec![0u32; n_vars];
            e[i] = k;
            p.terms.insert(e, Rat::one());
        }
        p
    }

    /// Substitute x_i -> 1 + x_i and expand.
    pub fn shift_by_one(&self) -> SymPoly {
        let mut out = SymPoly::zero(self.n_vars);
        for (e, c) in &self.terms {
            // expand prod_i (1 + x_i)^{e_i}
            let mut partial: Vec<(Vec<u32>, Rat)> = vec![(vec![0u32; self.n_vars], c.clone())];
            for (i, &ei) in e.iter().enumerate() {
                if ei == 0 {
                    continue;
                }
                let mut next = Vec::new();
                for (pe, pc) in &partial {
                    for a in 0..=ei {
                        let mut ne = pe.clone();
                        ne[i] += a;
                        next.push((ne, pc * binomial_rat(ei, a)));
                    }
                }
                partial = next;
            }
            for (pe, pc) in partial {
                let entry = out.terms.entry(pe).or_insert_with(Rat::zero);
                *entry += pc;
            }
        }
        out.terms.retain(|_, v| !v.is_zero());
        out
    }
}

fn binomial_rat(n: u32, k: u32) -> Rat {
    let mut acc = Rat::one();
    for i in 0..k {
        acc *= rat((n - i) as i64) / rat((i + 1) as i64);
    }
    acc
}

/// Schur polynomial s_lambda in n eigenvalue variables, from the power-sum
/// expansion.
pub(crate) fn schur_sym(lambda: &Partition, n: usize) -> SymPoly {
    let mut acc = SymPoly::zero(n);
    for (mu, c) in schur_in_powersums(lambda) {
        let mut term = SymPoly::constant(n, c);
        for &p in mu.stripped() {
            term = term.mul(&SymPoly::powersum(p, n));
        }
        acc = acc.add(&term);
    }
    acc
}

/// Normalized spherical polynomial Phi_m = s_m / s_m(1^n) in eigenvalue
/// variables.
pub(crate) fn spherical_sym(m: &Partition, n: usize) -> Result<SymPoly> {
    let dim = schur_dim(m, n)?;
    Ok(schur_sym(m, n).scale(&(Rat::one() / dim)))
}

/// Full expansion Phi_m(1 + x) = sum_k binom(m, k) Phi_k(x): returns the
/// coefficient map over partitions k with |k| <= |m|, length <= n.
pub fn gen_binomial_row(m: &Partition, n: usize) -> Result<BTreeMap<Partition, Rat>> {
    let shifted = spherical_sym(m, n)?.shift_by_one();
    let basis: Vec<Partition> = enumerate_partitions(n, m.weight());
    let phis: Vec<SymPoly> = basis
        .iter()
        .map(|k| spherical_sym(k, n))
        .collect::<Result<_>>()?;

    // all monomials appearing anywhere
    let mut monos: Vec<Vec<u32>> = Vec::new();
    {
        let mut seen = std::collections::BTreeSet::new();
        for p in phis.iter().chain(std::iter::once(&shifted)) {
            for e in p.terms.keys() {
                if seen.insert(e.clone()) {
                    monos.push(e.clone());
                }
            }
        }
    }

    let a: Vec<Vec<GaussRat>> = monos
        .iter()
        .map(|e| {
            phis.iter()
                .map(|p| {
                    GaussRat::from_rat(p.terms.get(e).cloned().unwrap_or_else(Rat::zero))
                })
                .collect()
        })
        .collect();
    let b: Vec<GaussRat> = monos
        .iter()
        .map(|e| GaussRat::from_rat(shifted.terms.get(e).cloned().unwrap_or_else(Rat::zero)))
        .collect();
    let sol = solve_exact(&a, &b)?;

    let mut out = BTreeMap::new();
    for (k, c) in basis.into_iter().zip(sol) {
        debug_assert!(c.is_real());
        if !c.re.is_zero() {
            out.insert(k, c.re);
        }
    }
    Ok(out)
}

/// Generalized binomial coefficient binom(m, k): coefficient of Phi_k in the
/// expansion of Phi_m(1 + x). Zero when k is outside the expansion support.
pub fn gen_binomial(m: &Partition, k: &Partition, n: usize) -> Result<Rat> {
    if k.weight() > m.weight() {
        return Err(HermlagError::Domain(format!(
            "gen_binomial: |{}| > |{}|",
            k, m
        )));
    }
    let row = gen_binomial_row(m, n)?;
    let mut key = k.parts().to_vec();
    key.resize(n, 0);
    Ok(row.get(&Partition(key)).cloned().unwrap_or_else(Rat::zero))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat_frac;

    fn p(parts: &[u32], n: usize) -> Partition {
        Partition::new(parts, n).unwrap()
    }

    #[test]
    fn enumerate_ordering() {
        let got = enumerate_partitions(1, 2);
        assert_eq!(got, vec![p(&[0], 1), p(&[1], 1), p(&[2], 1)]);
        let got = enumerate_partitions(2, 2);
        assert_eq!(
            got,
            vec![p(&[], 2), p(&[1], 2), p(&[2], 2), p(&[1, 1], 2)]
        );
        let got = enumerate_partitions(3, 1);
        assert_eq!(got, vec![p(&[], 3), p(&[1], 3)]);
    }

    #[test]
    fn shifts() {
        assert_eq!(p(&[1, 1], 2).shift(1, 1), Some(p(&[2, 1], 2)));
        assert_eq!(p(&[1, 1], 2).shift(1, -1), None);
        assert_eq!(p(&[2, 1], 2).shift(2, -1), Some(p(&[2], 2)));
        assert_eq!(p(&[2, 2], 2).shift(2, 1), None); // (2,3) not decreasing
        assert_eq!(p(&[0, 0], 2).shift(2, -1), None);
        assert_eq!(p(&[1, 1], 2).shift(3, 1), None);
    }

    #[test]
    fn pochhammer_examples() {
        let nu = rat(3);
        assert_eq!(pochhammer_cone(&nu, &p(&[1], 2)), rat(3));
        assert_eq!(pochhammer_cone(&nu, &p(&[1, 1], 2)), rat(6));
        assert_eq!(pochhammer_cone(&nu, &p(&[2, 1], 2)), rat(24));
        assert_eq!(pochhammer_cone(&nu, &p(&[], 2)), rat(1));
    }

    #[test]
    fn pochhammer_shift_identity() {
        // (nu)_{m+gamma_j} = (nu)_m * (nu - (j-1) + m_j)
        for nu in [rat(6), rat_frac(7, 2)] {
            for m in enumerate_partitions(3, 3) {
                for j in 1..=3 {
                    if let Some(up) = m.shift(j, 1) {
                        let lhs = pochhammer_cone(&nu, &up);
                        let rhs = pochhammer_cone(&nu, &m)
                            * (&nu - rat((j - 1) as i64) + rat(m.parts()[j - 1] as i64));
                        assert_eq!(lhs, rhs, "m={m} j={j}");
                    }
                }
            }
        }
    }

    #[test]
    fn gindikin_ratio_matches_pochhammer() {
        for nu in [rat(3), rat_frac(7, 2), rat(6)] {
            for n in 1..=3usize {
                for m in enumerate_partitions(n, 4) {
                    assert_eq!(gindikin_ratio(&nu, &m), pochhammer_cone(&nu, &m));
                }
            }
        }
    }

    #[test]
    fn gindikin_gamma_values() {
        // n=1 is the classical Gamma function
        let g = gindikin_gamma(4.0, 1).unwrap();
        assert!((g - 6.0).abs() < 1e-12);
        // n=2, nu=4: pi * Gamma(4) * Gamma(3) = 12 pi
        let g = gindikin_gamma(4.0, 2).unwrap();
        assert!((g - 12.0 * std::f64::consts::PI).abs() < 1e-10);
        assert!(gindikin_gamma(1.0, 2).is_err());
    }

    #[test]
    fn character_small_values() {
        let n = 2usize;
        assert_eq!(character(&p(&[1, 1], n), &p(&[2], n)).unwrap(), -1);
        assert_eq!(character(&p(&[2], n), &p(&[1, 1], n)).unwrap(), 1);
        assert_eq!(character(&p(&[2, 1], 3), &p(&[3], 3)).unwrap(), -1);
        assert!(character(&p(&[2], 2), &p(&[1], 2)).is_err());
    }

    // Independent oracle: Frobenius character formula. chi^lambda(mu) is the
    // coefficient of x^{lambda+delta} in a_delta(x) * p_mu(x), with
    // delta = (k-1, ..., 1, 0) and a_delta the Vandermonde alternant.
    fn frobenius_character(lambda: &[u32], mu: &[u32]) -> i64 {
        let k: usize = lambda.iter().map(|&x| x as usize).sum();
        let mut lam = lambda.to_vec();
        lam.resize(k, 0);

        type Poly = BTreeMap<Vec<u32>, i64>;
        fn mul(a: &Poly, b: &Poly) -> Poly {
            let mut out = Poly::new();
            for (e1, c1) in a {
                for (e2, c2) in b {
                    let e: Vec<u32> = e1.iter().zip(e2).map(|(x, y)| x + y).collect();
                    *out.entry(e).or_insert(0) += c1 * c2;
                }
            }
            out
        }

        // alternant over all permutations of delta
        let mut alternant = Poly::new();
        let mut idx: Vec<usize> = (0..k).collect();
        permute(&mut idx, 0, &mut |perm, sign| {
            let mut e = vec![0u32; k];
            for (i, &pi) in perm.iter().enumerate() {
                e[i] = (k - 1 - pi) as u32;
            }
            *alternant.entry(e).or_insert(0) += sign;
        });

        let mut prod = alternant;
        for &part in mu {
            let mut ps = Poly::new();
            for i in 0..k {
                let mut e = vec![0u32; k];
                e[i] = part;
                *ps.entry(e).or_insert(0) += 1;
            }
            prod = mul(&prod, &ps);
        }

        let target: Vec<u32> = (0..k).map(|i| lam[i] + (k - 1 - i) as u32).collect();
        prod.get(&target).cloned().unwrap_or(0)
    }

    fn permute(idx: &mut Vec<usize>, start: usize, f: &mut impl FnMut(&[usize], i64)) {
        fn rec(idx: &mut Vec<usize>, start: usize, sign: i64, f: &mut impl FnMut(&[usize], i64)) {
            if start == idx.len() {
                f(idx, sign);
                return;
            }
            for i in start..idx.len() {
                idx.swap(start, i);
                let s = if i == start { sign } else { -sign };
                rec(idx, start + 1, s, f);
                idx.swap(start, i);
            }
        }
        rec(idx, start, 1, f);
    }

    #[test]
    fn character_matches_frobenius_oracle_up_to_weight_4() {
        for w in 1..=4u32 {
            let lams = enumerate_partitions(w as usize, w);
            for lam in lams.iter().filter(|l| l.weight() == w) {
                for mu in lams.iter().filter(|m| m.weight() == w) {
                    let got = character(lam, mu).unwrap();
                    let want = frobenius_character(lam.stripped(), mu.stripped());
                    assert_eq!(got, want, "lambda={lam} mu={mu}");
                }
            }
        }
    }

    #[test]
    fn natural_representation_trace_identity() {
        // trace of a permutation matrix = #fixed points = chi^{(k)} + chi^{(k-1,1)}
        for w in 2..=4u32 {
            let k = w as usize;
            let lams = enumerate_partitions(k, w);
            for mu in lams.iter().filter(|m| m.weight() == w) {
                let fixed = mu.stripped().iter().filter(|&&part| part == 1).count() as i64;
                let triv = character(&p(&[w], k), mu).unwrap();
                let std_parts: Vec<u32> = vec![w - 1, 1];
                let std_chi = character(&Partition::new(&std_parts, k).unwrap(), mu).unwrap();
                assert_eq!(fixed, triv + std_chi, "mu={mu}");
            }
        }
    }

    #[test]
    fn schur_in_powersums_examples() {
        let m = schur_in_powersums(&p(&[1], 1));
        assert_eq!(m.len(), 1);
        assert_eq!(m.values().next().unwrap(), &rat(1));

        let m = schur_in_powersums(&p(&[1, 1], 2));
        assert_eq!(m.get(&p(&[1, 1], 2)), Some(&rat_frac(1, 2)));
        assert_eq!(m.get(&p(&[2], 2)), Some(&rat_frac(-1, 2)));

        let m = schur_in_powersums(&p(&[2], 1));
        assert_eq!(m.get(&p(&[1, 1], 2)), Some(&rat_frac(1, 2)));
        assert_eq!(m.get(&p(&[2], 2)), Some(&rat_frac(1, 2)));
    }

    #[test]
    fn powersum_expansion_reproduces_dimension() {
        // substituting p_k -> n must give s_lambda(1^n)
        for n in 1..=3usize {
            for lam in enumerate_partitions(n, 4) {
                let mut total = Rat::zero();
                for (mu, c) in schur_in_powersums(&lam) {
                    let mut term = c;
                    for _ in mu.stripped() {
                        term *= rat(n as i64);
                    }
                    total += term;
                }
                assert_eq!(total, schur_dim(&lam, n).unwrap(), "lambda={lam} n={n}");
            }
        }
    }

    #[test]
    fn schur_dim_examples() {
        assert_eq!(schur_dim(&p(&[1, 1], 2), 2).unwrap(), rat(1));
        assert_eq!(schur_dim(&p(&[2], 2), 2).unwrap(), rat(3));
        assert_eq!(schur_dim(&p(&[2, 1], 3), 3).unwrap(), rat(8));
    }

    #[test]
    fn gen_binomial_examples() {
        let m = p(&[2], 1);
        assert_eq!(gen_binomial(&m, &m, 1).unwrap(), rat(1));
        assert_eq!(gen_binomial(&m, &p(&[1], 1), 1).unwrap(), rat(2));
        assert_eq!(
            gen_binomial(&p(&[1, 1], 2), &p(&[1], 2), 2).unwrap(),
            rat(2)
        );
    }

    #[test]
    fn gen_binomial_rank1_is_classical() {
        for mm in 0..=6u32 {
            for kk in 0..=mm {
                let b = gen_binomial(&p(&[mm], 1), &p(&[kk], 1), 1).unwrap();
                assert_eq!(b, binomial_rat(mm, kk), "C({mm},{kk})");
            }
        }
    }
}
