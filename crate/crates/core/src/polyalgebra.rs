//! Exact multivariate polynomial arithmetic in the real coordinates of
//! Herm(n), spherical polynomials as coordinate polynomials, and evaluation
//! at numeric Hermitian matrices.
//!
//! Coordinates follow the compatible basis {I_i, 1/2 J_{i,j}, 1/2 K_{i,j}}:
//! for rank n the variables are t_1..t_n (diagonal), then for each pair
//! i < j (lexicographic) the pair u_{i,j} = Re s_{i,j}, v_{i,j} = Im s_{i,j}.
//! Total n^2 real coordinates.

use nalgebra::DMatrix;
use num_complex::Complex64;
use num_traits::One;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

use crate::combinatorics::{schur_dim, schur_in_powersums, Partition};
use crate::error::{HermlagError, Result};
use crate::rational::{parse_rat, rat_to_string, GaussRat, Rat};

/// Coordinate bookkeeping for Herm(n).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HermCoords {
    pub n: usize,
}

impl HermCoords {
    pub fn new(n: usize) -> Self {
        HermCoords { n }
    }

    pub fn n_vars(&self) -> usize {
        self.n * self.n
    }

    /// Index of the diagonal coordinate t_i (0-based i).
    pub fn t(&self, i: usize) -> usize {
        debug_assert!(i < self.n);
        i
    }

    fn pair_pos(&self, i: usize, j: usize) -> usize {
        debug_assert!(i < j && j < self.n);
        i * (2 * self.n - i - 1) / 2 + (j - i - 1)
    }

    /// Index of u_{i,j} = Re s_{i,j}, i < j (0-based).
    pub fn u(&self, i: usize, j: usize) -> usize {
        self.n + 2 * self.pair_pos(i, j)
    }

    /// Index of v_{i,j} = Im s_{i,j}, i < j (0-based).
    pub fn v(&self, i: usize, j: usize) -> usize {
        self.n + 2 * self.pair_pos(i, j) + 1
    }

    /// Is this variable one of the diagonal coordinates? (tr s = sum t_i.)
    pub fn is_diagonal(&self, var: usize) -> bool {
        var < self.n
    }

    /// The coordinate polynomial s_{i,j} (0-based entries).
    pub fn entry_poly(&self, i: usize, j: usize) -> MultiPoly {
        let nv = self.n_vars();
        if i == j {
            MultiPoly::var(nv, self.t(i))
        } else if i < j {
            let mut p = MultiPoly::var(nv, self.u(i, j));
            p.add_term_mut(unit_expo(nv, self.v(i, j)), GaussRat::i());
            p
        } else {
            let mut p = MultiPoly::var(nv, self.u(j, i));
            p.add_term_mut(unit_expo(nv, self.v(j, i)), &GaussRat::zero() - &GaussRat::i());
            p
        }
    }

    /// Full matrix of coordinate polynomials.
    pub fn entry_matrix(&self) -> Vec<Vec<MultiPoly>> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.entry_poly(i, j)).collect())
            .collect()
    }

    /// Real coordinates of a Hermitian matrix.
    pub fn coords_of(&self, s: &HermMatrix) -> Vec<f64> {
        let mut c = vec![0.0; self.n_vars()];
        for i in 0..self.n {
            c[self.t(i)] = s.mat[(i, i)].re;
        }
        for i in 0..self.n {
            for j in (i + 1)..self.n {
                c[self.u(i, j)] = s.mat[(i, j)].re;
                c[self.v(i, j)] = s.mat[(i, j)].im;
            }
        }
        c
    }

    /// Reconstruct the Hermitian matrix from real coordinates.
    pub fn matrix_from_coords(&self, c: &[f64]) -> DMatrix<Complex64> {
        let mut m = DMatrix::<Complex64>::zeros(self.n, self.n);
        for i in 0..self.n {
            m[(i, i)] = Complex64::new(c[self.t(i)], 0.0);
        }
        for i in 0..self.n {
            for j in (i + 1)..self.n {
                let z = Complex64::new(c[self.u(i, j)], c[self.v(i, j)]);
                m[(i, j)] = z;
                m[(j, i)] = z.conj();
            }
        }
        m
    }
}

fn unit_expo(n_vars: usize, var: usize) -> Vec<u32> {
    let mut e = vec![0u32; n_vars];
    e[var] = 1;
    e
}

/// Sparse multivariate polynomial over the Gaussian rationals.
/// No zero coefficients are stored; equality is coefficient-map equality.
#[derive(Clone, PartialEq, Debug)]
pub struct MultiPoly {
    pub n_vars: usize,
    terms: BTreeMap<Vec<u32>, GaussRat>,
}

impl MultiPoly {
    pub fn zero(n_vars: usize) -> Self {
        MultiPoly {
            n_vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(n_vars: usize, c: GaussRat) -> Self {
        let mut p = MultiPoly::zero(n_vars);
        p.add_term_mut(vec![0; n_vars], c);
        p
    }

    pub fn one(n_vars: usize) -> Self {
        MultiPoly::constant(n_vars, GaussRat::one())
    }

    pub fn var(n_vars: usize, idx: usize) -> Self {
        let mut p = MultiPoly::zero(n_vars);
        p.add_term_mut(unit_expo(n_vars, idx), GaussRat::one());
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &GaussRat)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, expo: &[u32]) -> GaussRat {
        self.terms.get(expo).cloned().unwrap_or_else(GaussRat::zero)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|e| e.iter().sum::<u32>())
            .max()
            .unwrap_or(0)
    }

    pub fn add_term_mut(&mut self, expo: Vec<u32>, c: GaussRat) {
        if c.is_zero() {
            return;
        }
        debug_assert_eq!(expo.len(), self.n_vars);
        match self.terms.entry(expo) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += &c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term_mut(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term_mut(e.clone(), -c);
        }
        out
    }

    pub fn neg(&self) -> MultiPoly {
        MultiPoly {
            n_vars: self.n_vars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn mul(&self, other: &MultiPoly) -> MultiPoly {
        let mut out = MultiPoly::zero(self.n_vars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let expo: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term_mut(expo, c1 * c2);
            }
        }
        out
    }

    pub fn scale(&self, c: &GaussRat) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(self.n_vars);
        }
        MultiPoly {
            n_vars: self.n_vars,
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    pub fn scale_rat(&self, c: &Rat) -> MultiPoly {
        self.scale(&GaussRat::from_rat(c.clone()))
    }

    /// Exact partial derivative with respect to variable `var`.
    pub fn deriv(&self, var: usize) -> MultiPoly {
        let mut out = MultiPoly::zero(self.n_vars);
        for (e, c) in &self.terms {
            let k = e[var];
            if k == 0 {
                continue;
            }
            let mut ne = e.clone();
            ne[var] = k - 1;
            out.add_term_mut(ne, c * &GaussRat::from_i64(k as i64));
        }
        out
    }

    /// Homogeneous component of total degree d.
    pub fn homogeneous_part(&self, d: u32) -> MultiPoly {
        MultiPoly {
            n_vars: self.n_vars,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e.iter().sum::<u32>() == d)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    /// All coefficients real (used by sanity checks on spherical data).
    pub fn is_real(&self) -> bool {
        self.terms.values().all(|c| c.is_real())
    }

    pub fn compile(&self) -> CompiledPoly {
        CompiledPoly {
            n_vars: self.n_vars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), c.to_complex()))
                .collect(),
        }
    }

    /// Evaluate at real coordinates.
    pub fn eval(&self, coords: &[f64]) -> Complex64 {
        self.compile().eval(coords)
    }

    /// Canonical JSON form: exponent-sorted list of
    /// {exponents, re: "p/q", im: "p/q"}.
    pub fn to_canonical_json(&self) -> serde_json::Value {
        let rows: Vec<PolyTermJson> = self
            .terms
            .iter()
            .map(|(e, c)| PolyTermJson {
                exponents: e.clone(),
                re: rat_to_string(&c.re),
                im: rat_to_string(&c.im),
            })
            .collect();
        serde_json::to_value(rows).expect("poly serialization")
    }

    pub fn from_canonical_json(v: &serde_json::Value, n_vars: usize) -> Result<MultiPoly> {
        let rows: Vec<PolyTermJson> = serde_json::from_value(v.clone())
            .map_err(|e| HermlagError::Parse(format!("bad polynomial JSON: {e}")))?;
        let mut p = MultiPoly::zero(n_vars);
        for row in rows {
            if row.exponents.len() != n_vars {
                return Err(HermlagError::Dimension(format!(
                    "exponent vector length {} != {}",
                    row.exponents.len(),
                    n_vars
                )));
            }
            p.add_term_mut(
                row.exponents,
                GaussRat::new(parse_rat(&row.re)?, parse_rat(&row.im)?),
            );
        }
        Ok(p)
    }
}

#[derive(Serialize, Deserialize)]
struct PolyTermJson {
    exponents: Vec<u32>,
    re: String,
    im: String,
}

/// Floating-point image of a MultiPoly, for repeated numeric evaluation.
pub struct CompiledPoly {
    pub n_vars: usize,
    terms: Vec<(Vec<u32>, Complex64)>,
}

impl CompiledPoly {
    pub fn eval(&self, coords: &[f64]) -> Complex64 {
        debug_assert_eq!(coords.len(), self.n_vars);
        let mut acc = Complex64::new(0.0, 0.0);
        for (e, c) in &self.terms {
            let mut m = 1.0f64;
            for (x, &k) in coords.iter().zip(e.iter()) {
                for _ in 0..k {
                    m *= x;
                }
            }
            acc += c * m;
        }
        acc
    }
}

/// Numeric Hermitian matrix with a validated Hermiticity tolerance.
#[derive(Clone, Debug)]
pub struct HermMatrix {
    pub mat: DMatrix<Complex64>,
}

impl HermMatrix {
    pub fn new(mat: DMatrix<Complex64>) -> Result<Self> {
        if mat.nrows() != mat.ncols() {
            return Err(HermlagError::Dimension("matrix not square".into()));
        }
        let scale = mat.norm().max(1e-300);
        let dev = (&mat - mat.adjoint()).norm();
        if dev > 1e-12 * scale {
            return Err(HermlagError::Domain(format!(
                "matrix not Hermitian: deviation {dev:.3e} exceeds 1e-12 * norm"
            )));
        }
        // symmetrize so downstream arithmetic sees an exactly Hermitian matrix
        let sym = (&mat + mat.adjoint()) * Complex64::new(0.5, 0.0);
        Ok(HermMatrix { mat: sym })
    }

    pub fn from_diag(d: &[f64]) -> Self {
        let n = d.len();
        let mut m = DMatrix::<Complex64>::zeros(n, n);
        for (i, &x) in d.iter().enumerate() {
            m[(i, i)] = Complex64::new(x, 0.0);
        }
        HermMatrix { mat: m }
    }

    pub fn n(&self) -> usize {
        self.mat.nrows()
    }

    pub fn trace(&self) -> f64 {
        (0..self.n()).map(|i| self.mat[(i, i)].re).sum()
    }

    /// Real eigenvalues, ascending.
    pub fn eigenvalues(&self) -> Vec<f64> {
        let mut ev: Vec<f64> = self
            .mat
            .clone()
            .symmetric_eigen()
            .eigenvalues
            .iter()
            .cloned()
            .collect();
        ev.sort_by(|a, b| a.partial_cmp(b).unwrap());
        ev
    }

    pub fn is_positive_definite(&self) -> bool {
        self.eigenvalues().iter().all(|&l| l > 0.0)
    }
}

/// tr(s^k) as an exact coordinate polynomial. Real coefficients.
pub fn powersum_poly(k: u32, n: usize) -> MultiPoly {
    let hc = HermCoords::new(n);
    let nv = hc.n_vars();
    if k == 0 {
        return MultiPoly::constant(nv, GaussRat::from_i64(n as i64));
    }
    let s = hc.entry_matrix();
    // power = s^k by repeated multiplication
    let mut power = s.clone();
    for _ in 1..k {
        power = mat_mul_poly(&power, &s, nv);
    }
    let mut tr = MultiPoly::zero(nv);
    for (i, row) in power.iter().enumerate() {
        tr = tr.add(&row[i]);
    }
    tr
}

fn mat_mul_poly(a: &[Vec<MultiPoly>], b: &[Vec<MultiPoly>], nv: usize) -> Vec<Vec<MultiPoly>> {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let mut acc = MultiPoly::zero(nv);
                    for k in 0..n {
                        acc = acc.add(&a[i][k].mul(&b[k][j]));
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

/// Spherical polynomial Phi_m as an exact coordinate polynomial: the
/// power-sum expansion of s_m with p_k -> tr(s^k), divided by s_m(1^n).
pub fn spherical_poly(m: &Partition, n: usize) -> Result<MultiPoly> {
    if m.stripped().len() > n {
        return Err(HermlagError::Domain(format!(
            "spherical_poly: partition {} longer than rank {}",
            m, n
        )));
    }
    let nv = n * n;
    let mut acc = MultiPoly::zero(nv);
    for (mu, c) in schur_in_powersums(m) {
        let mut term = MultiPoly::constant(nv, GaussRat::from_rat(c));
        for &p in mu.stripped() {
            term = term.mul(&powersum_poly(p, n));
        }
        acc = acc.add(&term);
    }
    let dim = schur_dim(m, n)?;
    Ok(acc.scale_rat(&(Rat::one() / dim)))
}

/// Evaluate an exact polynomial at a Hermitian matrix point.
pub fn eval_poly(p: &MultiPoly, s: &HermMatrix) -> Result<Complex64> {
    let n = s.n();
    if p.n_vars != n * n {
        return Err(HermlagError::Dimension(format!(
            "polynomial has {} vars, matrix rank {} needs {}",
            p.n_vars,
            n,
            n * n
        )));
    }
    let hc = HermCoords::new(n);
    Ok(p.eval(&hc.coords_of(s)))
}

/// Phi_m at a vector of eigenvalues: Schur over eigenvalues / s_m(1^n).
/// Uses the bialternant formula for well-separated eigenvalues and a
/// semistandard-tableaux sum otherwise.
pub fn eval_spherical_eig(m: &Partition, eigs: &[f64]) -> Result<f64> {
    let n = eigs.len();
    if m.stripped().len() > n {
        return Err(HermlagError::Domain(format!(
            "eval_spherical_eig: partition {} longer than {} eigenvalues",
            m, n
        )));
    }
    let dim = crate::rational::rat_to_f64(&schur_dim(m, n)?);
    let scale: f64 = eigs.iter().map(|x| x.abs()).fold(1.0, f64::max);
    let mut sorted = eigs.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let min_gap = sorted
        .windows(2)
        .map(|w| (w[1] - w[0]).abs())
        .fold(f64::INFINITY, f64::min);
    let schur = if n == 1 {
        eigs[0].powi(m.parts()[0] as i32)
    } else if min_gap > 1e-6 * scale {
        schur_bialternant(m, eigs)
    } else {
        schur_tableaux(m, eigs)
    };
    Ok(schur / dim)
}

fn schur_bialternant(m: &Partition, eigs: &[f64]) -> f64 {
    let n = eigs.len();
    let mut parts = m.parts().to_vec();
    parts.resize(n, 0);
    let num = DMatrix::<f64>::from_fn(n, n, |i, j| {
        eigs[i].powi((parts[j] as i32) + (n - 1 - j) as i32)
    });
    let den = DMatrix::<f64>::from_fn(n, n, |i, j| eigs[i].powi((n - 1 - j) as i32));
    num.determinant() / den.determinant()
}

fn schur_tableaux(m: &Partition, eigs: &[f64]) -> f64 {
    // sum over semistandard tableaux of shape m with entries in 1..=n
    let shape: Vec<u32> = m.stripped().to_vec();
    if shape.is_empty() {
        return 1.0;
    }
    let n = eigs.len();
    let mut total = 0.0;
    let mut rows: Vec<Vec<usize>> = shape.iter().map(|&r| vec![0; r as usize]).collect();
    fill_tableau(&shape, n, 0, 0, &mut rows, eigs, &mut total);
    total
}

fn fill_tableau(
    shape: &[u32],
    n: usize,
    row: usize,
    col: usize,
    rows: &mut Vec<Vec<usize>>,
    eigs: &[f64],
    total: &mut f64,
) {
    if row == shape.len() {
        let mut prod = 1.0;
        for r in rows.iter() {
            for &e in r {
                prod *= eigs[e];
            }
        }
        *total += prod;
        return;
    }
    if col == shape[row] as usize {
        fill_tableau(shape, n, row + 1, 0, rows, eigs, total);
        return;
    }
    let lo = {
        let mut lo = 0usize;
        if col > 0 {
            lo = lo.max(rows[row][col - 1]); // weakly increasing along rows
        }
        if row > 0 && col < rows[row - 1].len() {
            lo = lo.max(rows[row - 1][col] + 1); // strictly increasing down columns
        }
        lo
    };
    for e in lo..n {
        rows[row][col] = e;
        fill_tableau(shape, n, row, col + 1, rows, eigs, total);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn p(parts: &[u32], n: usize) -> Partition {
        Partition::new(parts, n).unwrap()
    }

    #[test]
    fn powersum_examples() {
        let hc = HermCoords::new(2);
        let p1 = powersum_poly(1, 2);
        let mut want = MultiPoly::var(4, hc.t(0));
        want = want.add(&MultiPoly::var(4, hc.t(1)));
        assert_eq!(p1, want);

        // tr(s^2) = t1^2 + t2^2 + 2u^2 + 2v^2
        let p2 = powersum_poly(2, 2);
        let mut want = MultiPoly::zero(4);
        let mut e = vec![0u32; 4];
        e[hc.t(0)] = 2;
        want.add_term_mut(e.clone(), GaussRat::one());
        let mut e = vec![0u32; 4];
        e[hc.t(1)] = 2;
        want.add_term_mut(e, GaussRat::one());
        let mut e = vec![0u32; 4];
        e[hc.u(0, 1)] = 2;
        want.add_term_mut(e, GaussRat::from_i64(2));
        let mut e = vec![0u32; 4];
        e[hc.v(0, 1)] = 2;
        want.add_term_mut(e, GaussRat::from_i64(2));
        assert_eq!(p2, want);

        let p0 = powersum_poly(0, 3);
        assert_eq!(p0, MultiPoly::constant(9, GaussRat::from_i64(3)));
    }

    #[test]
    fn spherical_examples() {
        // Phi_(1,0) = (t1+t2)/2
        let f = spherical_poly(&p(&[1], 2), 2).unwrap();
        let want = powersum_poly(1, 2).scale_rat(&(rat(1) / rat(2)));
        assert_eq!(f, want);

        // Phi_(1,1) = det(s) = t1 t2 - u^2 - v^2
        let f = spherical_poly(&p(&[1, 1], 2), 2).unwrap();
        let hc = HermCoords::new(2);
        let mut want = MultiPoly::zero(4);
        let mut e = vec![0u32; 4];
        e[hc.t(0)] = 1;
        e[hc.t(1)] = 1;
        want.add_term_mut(e, GaussRat::one());
        let mut e = vec![0u32; 4];
        e[hc.u(0, 1)] = 2;
        want.add_term_mut(e, GaussRat::from_i64(-1));
        let mut e = vec![0u32; 4];
        e[hc.v(0, 1)] = 2;
        want.add_term_mut(e, GaussRat::from_i64(-1));
        assert_eq!(f, want);

        // Phi_0 = 1
        let f = spherical_poly(&p(&[], 3), 3).unwrap();
        assert_eq!(f, MultiPoly::one(9));
    }

    #[test]
    fn spherical_at_identity_is_one_exactly() {
        // evaluate the exact polynomial at coordinates of the identity,
        // checking the rational value by direct substitution
        for n in 1..=3usize {
            for m in crate::combinatorics::enumerate_partitions(n, 5) {
                let f = spherical_poly(&m, n).unwrap();
                let mut total = GaussRat::zero();
                for (e, c) in f.terms() {
                    // identity coords: t_i = 1, u = v = 0
                    if e.iter().skip(n).any(|&k| k > 0) {
                        continue;
                    }
                    total += c;
                }
                assert_eq!(total, GaussRat::one(), "m={m} n={n}");
            }
        }
    }

    #[test]
    fn eval_examples() {
        let s = HermMatrix::from_diag(&[1.0, 3.0]);
        let v = eval_poly(&spherical_poly(&p(&[1], 2), 2).unwrap(), &s).unwrap();
        assert!((v.re - 2.0).abs() < 1e-14 && v.im.abs() < 1e-14);
        let v = eval_poly(&spherical_poly(&p(&[1, 1], 2), 2).unwrap(), &s).unwrap();
        assert!((v.re - 3.0).abs() < 1e-14);

        // [[1, i], [-i, 1]] has eigenvalues {0, 2}
        let mut m = DMatrix::<Complex64>::zeros(2, 2);
        m[(0, 0)] = Complex64::new(1.0, 0.0);
        m[(1, 1)] = Complex64::new(1.0, 0.0);
        m[(0, 1)] = Complex64::new(0.0, 1.0);
        m[(1, 0)] = Complex64::new(0.0, -1.0);
        let s = HermMatrix::new(m).unwrap();
        let v = eval_poly(&powersum_poly(2, 2), &s).unwrap();
        assert!((v.re - 4.0).abs() < 1e-12 && v.im.abs() < 1e-12);
    }

    #[test]
    fn eval_spherical_eig_examples() {
        assert!((eval_spherical_eig(&p(&[1], 2), &[1.0, 1.0]).unwrap() - 1.0).abs() < 1e-14);
        let v = eval_spherical_eig(&p(&[2], 2), &[2.0, 0.0]).unwrap();
        assert!((v - 4.0 / 3.0).abs() < 1e-12);
        let v = eval_spherical_eig(&p(&[1, 1], 2), &[5.0, 2.0]).unwrap();
        assert!((v - 10.0).abs() < 1e-12);
    }

    #[test]
    fn eval_spherical_eig_agrees_with_eval_poly() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(42);
        for _ in 0..100 {
            let n = rng.gen_range(1..=3usize);
            let mut m = DMatrix::<Complex64>::zeros(n, n);
            for i in 0..n {
                m[(i, i)] = Complex64::new(rng.gen_range(-2.0..2.0), 0.0);
                for j in (i + 1)..n {
                    let z = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
                    m[(i, j)] = z;
                    m[(j, i)] = z.conj();
                }
            }
            let s = HermMatrix::new(m).unwrap();
            let eigs = s.eigenvalues();
            for parts in [vec![1], vec![2], vec![1, 1], vec![2, 1]] {
                if parts.len() > n {
                    continue;
                }
                let part = Partition::new(&parts, n).unwrap();
                let a = eval_poly(&spherical_poly(&part, n).unwrap(), &s).unwrap();
                let b = eval_spherical_eig(&part, &eigs).unwrap();
                let scale = a.norm().max(b.abs()).max(1e-3);
                assert!(
                    (a.re - b).abs() / scale < 1e-10 && a.im.abs() / scale < 1e-10,
                    "m={part} n={n} a={a} b={b}"
                );
            }
        }
    }

    #[test]
    fn invariance_under_conjugation() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let n = 2usize;
        for _ in 0..20 {
            let mut m = DMatrix::<Complex64>::zeros(n, n);
            for i in 0..n {
                m[(i, i)] = Complex64::new(rng.gen_range(-2.0..2.0), 0.0);
            }
            let z = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            m[(0, 1)] = z;
            m[(1, 0)] = z.conj();
            let s = HermMatrix::new(m.clone()).unwrap();

            // random unitary from the QR of a random complex matrix
            let g = DMatrix::<Complex64>::from_fn(n, n, |_, _| {
                Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
            });
            let qr = g.qr();
            let q = qr.q();
            let conj = HermMatrix::new(&q * &m * q.adjoint()).unwrap();

            let phi = spherical_poly(&p(&[2, 1], 2), 2).unwrap();
            let a = eval_poly(&phi, &s).unwrap();
            let b = eval_poly(&phi, &conj).unwrap();
            assert!((a - b).norm() < 1e-10 * (1.0 + a.norm()));
        }
    }

    #[test]
    fn homogeneity_exact() {
        // Phi_m(c s) = c^{|m|} Phi_m(s) as polynomials: scale variables by 2
        let m = p(&[2, 1], 2);
        let phi = spherical_poly(&m, 2).unwrap();
        let mut scaled = MultiPoly::zero(4);
        for (e, c) in phi.terms() {
            let deg: u32 = e.iter().sum();
            let factor = GaussRat::from_i64(1i64 << deg);
            scaled.add_term_mut(e.clone(), c * &factor);
        }
        let expected = phi.scale(&GaussRat::from_i64(1 << m.weight()));
        assert_eq!(scaled, expected);
    }

    #[test]
    fn canonical_json_roundtrip() {
        let phi = spherical_poly(&p(&[1, 1], 2), 2).unwrap();
        let js = phi.to_canonical_json();
        let back = MultiPoly::from_canonical_json(&js, 4).unwrap();
        assert_eq!(phi, back);
    }

    #[test]
    fn non_hermitian_rejected() {
        let mut m = DMatrix::<Complex64>::zeros(2, 2);
        m[(0, 1)] = Complex64::new(1.0, 0.0);
        assert!(HermMatrix::new(m).is_err());
    }
}
