//! Gradient calculus on Herm(n) and the Lie-algebra differential operators.
//!
//! Functions live in the class e^{-tr(s)} p(s) with p an exact polynomial,
//! which is closed under every operator here. Operators are stored as
//! normal-ordered coefficient maps: polynomial coefficients multiply after
//! all derivatives have acted, following the explicit index sum
//! tr(s nabla x nabla) f = sum_{i,j,k,l} s_{j,i} x_{k,l} D_{k,i} D_{j,l} f.

use nalgebra::DMatrix;
use num_complex::Complex64;
use num_traits::Zero;
use std::collections::BTreeMap;

use crate::error::{HermlagError, Result};
use crate::polyalgebra::{HermCoords, HermMatrix, MultiPoly};
use crate::rational::{rat_frac, GaussRat, Rat};

/// f(s) = e^{-tr(s)} p(s). Equality is equality of p.
#[derive(Clone, PartialEq, Debug)]
pub struct ExpPoly {
    pub n: usize,
    pub p: MultiPoly,
}

impl ExpPoly {
    pub fn new(n: usize, p: MultiPoly) -> Result<Self> {
        if p.n_vars != n * n {
            return Err(HermlagError::Dimension(format!(
                "ExpPoly: polynomial has {} vars, rank {} needs {}",
                p.n_vars,
                n,
                n * n
            )));
        }
        Ok(ExpPoly { n, p })
    }

    /// e^{-tr(s)} itself.
    pub fn ground(n: usize) -> Self {
        ExpPoly {
            n,
            p: MultiPoly::one(n * n),
        }
    }

    pub fn zero(n: usize) -> Self {
        ExpPoly {
            n,
            p: MultiPoly::zero(n * n),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.p.is_zero()
    }

    pub fn add(&self, other: &ExpPoly) -> ExpPoly {
        ExpPoly {
            n: self.n,
            p: self.p.add(&other.p),
        }
    }

    pub fn sub(&self, other: &ExpPoly) -> ExpPoly {
        ExpPoly {
            n: self.n,
            p: self.p.sub(&other.p),
        }
    }

    pub fn scale(&self, c: &GaussRat) -> ExpPoly {
        ExpPoly {
            n: self.n,
            p: self.p.scale(c),
        }
    }

    pub fn scale_rat(&self, c: &Rat) -> ExpPoly {
        self.scale(&GaussRat::from_rat(c.clone()))
    }

    /// Derivative with respect to one real coordinate; the exponential
    /// contributes -p when the coordinate is diagonal.
    pub fn deriv_coord(&self, var: usize) -> ExpPoly {
        let hc = HermCoords::new(self.n);
        let mut dp = self.p.deriv(var);
        if hc.is_diagonal(var) {
            dp = dp.sub(&self.p);
        }
        ExpPoly { n: self.n, p: dp }
    }

    /// Entry derivative D_{i,j} (0-based): D_{E_{i,j}} in the compatible
    /// basis. Diagonal: d/dt_i; i<j: (d/du - i d/dv)/2; i>j: (d/du + i d/dv)/2.
    pub fn d_entry(&self, i: usize, j: usize) -> Result<ExpPoly> {
        let n = self.n;
        if i >= n || j >= n {
            return Err(HermlagError::Index(format!(
                "d_entry({i},{j}) on rank {n}"
            )));
        }
        let hc = HermCoords::new(n);
        if i == j {
            return Ok(self.deriv_coord(hc.t(i)));
        }
        let half = GaussRat::new(rat_frac(1, 2), Rat::zero());
        let half_i = GaussRat::new(Rat::zero(), rat_frac(1, 2));
        let (u, v, im_sign) = if i < j {
            (hc.u(i, j), hc.v(i, j), -1i64)
        } else {
            (hc.u(j, i), hc.v(j, i), 1i64)
        };
        let du = self.deriv_coord(u).scale(&half);
        let mut iv = self.deriv_coord(v).scale(&half_i);
        if im_sign < 0 {
            iv = iv.scale(&GaussRat::from_i64(-1));
        }
        Ok(du.add(&iv))
    }

    /// Numeric value e^{-tr s} p(s).
    pub fn eval(&self, s: &HermMatrix) -> Result<Complex64> {
        let v = crate::polyalgebra::eval_poly(&self.p, s)?;
        Ok(v * (-s.trace()).exp())
    }
}

/// Entry derivative of a plain polynomial (no exponential factor).
pub fn d_entry_poly(i: usize, j: usize, p: &MultiPoly, n: usize) -> Result<MultiPoly> {
    if i >= n || j >= n {
        return Err(HermlagError::Index(format!("d_entry({i},{j}) on rank {n}")));
    }
    let hc = HermCoords::new(n);
    if i == j {
        return Ok(p.deriv(hc.t(i)));
    }
    let half = GaussRat::new(rat_frac(1, 2), Rat::zero());
    let half_i = GaussRat::new(Rat::zero(), rat_frac(1, 2));
    let (u, v, im_sign) = if i < j {
        (hc.u(i, j), hc.v(i, j), -1i64)
    } else {
        (hc.u(j, i), hc.v(j, i), 1i64)
    };
    let du = p.deriv(u).scale(&half);
    let mut iv = p.deriv(v).scale(&half_i);
    if im_sign < 0 {
        iv = iv.scale(&GaussRat::from_i64(-1));
    }
    Ok(du.add(&iv))
}

/// Gradient matrix: (nabla f)_{i,j} = D_{j,i} f.
pub fn gradient(f: &ExpPoly) -> Vec<Vec<ExpPoly>> {
    let n = f.n;
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| f.d_entry(j, i).expect("indices in range"))
                .collect()
        })
        .collect()
}

/// Directional derivative D_w f = sum w_{i,j} D_{i,j} f = tr(w nabla) f.
pub fn dir_derivative(w: &GMat, f: &ExpPoly) -> Result<ExpPoly> {
    if w.n != f.n {
        return Err(HermlagError::Dimension(
            "dir_derivative: rank mismatch".into(),
        ));
    }
    let mut acc = ExpPoly::zero(f.n);
    for i in 0..f.n {
        for j in 0..f.n {
            let c = w.get(i, j);
            if c.is_zero() {
                continue;
            }
            acc = acc.add(&f.d_entry(i, j)?.scale(&c));
        }
    }
    Ok(acc)
}

/// Same for plain polynomials.
pub fn dir_derivative_poly(w: &GMat, p: &MultiPoly, n: usize) -> Result<MultiPoly> {
    let mut acc = MultiPoly::zero(n * n);
    for i in 0..n {
        for j in 0..n {
            let c = w.get(i, j);
            if c.is_zero() {
                continue;
            }
            acc = acc.add(&d_entry_poly(i, j, p, n)?.scale(&c));
        }
    }
    Ok(acc)
}

/// Exact complex matrix over the Gaussian rationals.
#[derive(Clone, PartialEq, Debug)]
pub struct GMat {
    pub n: usize,
    e: Vec<GaussRat>,
}

impl GMat {
    pub fn zeros(n: usize) -> Self {
        GMat {
            n,
            e: vec![GaussRat::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = GMat::zeros(n);
        for i in 0..n {
            m.set(i, i, GaussRat::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<GaussRat>>) -> Self {
        let n = rows.len();
        let mut m = GMat::zeros(n);
        for (i, r) in rows.into_iter().enumerate() {
            assert_eq!(r.len(), n);
            for (j, c) in r.into_iter().enumerate() {
                m.set(i, j, c);
            }
        }
        m
    }

    pub fn get(&self, i: usize, j: usize) -> GaussRat {
        self.e[i * self.n + j].clone()
    }

    pub fn set(&mut self, i: usize, j: usize, c: GaussRat) {
        self.e[i * self.n + j] = c;
    }

    pub fn add(&self, o: &GMat) -> GMat {
        GMat {
            n: self.n,
            e: self.e.iter().zip(&o.e).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, o: &GMat) -> GMat {
        GMat {
            n: self.n,
            e: self.e.iter().zip(&o.e).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn neg(&self) -> GMat {
        GMat {
            n: self.n,
            e: self.e.iter().map(|a| -a).collect(),
        }
    }

    pub fn scale(&self, c: &GaussRat) -> GMat {
        GMat {
            n: self.n,
            e: self.e.iter().map(|a| a * c).collect(),
        }
    }

    pub fn mul(&self, o: &GMat) -> GMat {
        let n = self.n;
        let mut m = GMat::zeros(n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = GaussRat::zero();
                for k in 0..n {
                    acc += &(&self.e[i * n + k] * &o.e[k * n + j]);
                }
                m.set(i, j, acc);
            }
        }
        m
    }

    pub fn adjoint(&self) -> GMat {
        let n = self.n;
        let mut m = GMat::zeros(n);
        for i in 0..n {
            for j in 0..n {
                m.set(i, j, self.e[j * n + i].conj());
            }
        }
        m
    }

    pub fn trace(&self) -> GaussRat {
        let mut acc = GaussRat::zero();
        for i in 0..self.n {
            acc += &self.e[i * self.n + i];
        }
        acc
    }

    pub fn is_zero(&self) -> bool {
        self.e.iter().all(|c| c.is_zero())
    }

    pub fn is_hermitian(&self) -> bool {
        *self == self.adjoint()
    }

    pub fn to_complex(&self) -> DMatrix<Complex64> {
        DMatrix::from_fn(self.n, self.n, |i, j| self.e[i * self.n + j].to_complex())
    }
}

/// Tagged element of sl(2n, C) in one of the three block shapes:
/// k_C = [[a,b],[b,a]] with tr(a) = 0; p^+ = [[x,x],[-x,-x]] with x = x*;
/// p^- = [[x,-x],[x,-x]] with x = x*.
#[derive(Clone, PartialEq, Debug)]
pub enum LieElement {
    KC { a: GMat, b: GMat },
    PPlus { x: GMat },
    PMinus { x: GMat },
}

impl LieElement {
    pub fn kc(a: GMat, b: GMat) -> Result<Self> {
        if a.n != b.n {
            return Err(HermlagError::Shape("kc: a, b size mismatch".into()));
        }
        if !a.trace().is_zero() {
            return Err(HermlagError::Shape("kc: tr(a) != 0".into()));
        }
        Ok(LieElement::KC { a, b })
    }

    pub fn p_plus(x: GMat) -> Result<Self> {
        if !x.is_hermitian() {
            return Err(HermlagError::Shape("p_plus: x not Hermitian".into()));
        }
        Ok(LieElement::PPlus { x })
    }

    pub fn p_minus(x: GMat) -> Result<Self> {
        if !x.is_hermitian() {
            return Err(HermlagError::Shape("p_minus: x not Hermitian".into()));
        }
        Ok(LieElement::PMinus { x })
    }

    /// xi = [[0, 1], [1, 0]] block form: k_C with a = 0, b = I.
    pub fn xi(n: usize) -> Self {
        LieElement::KC {
            a: GMat::zeros(n),
            b: GMat::identity(n),
        }
    }

    /// X^+ = [[-1,-1],[1,1]] block form: p^+ with x = -I.
    pub fn x_plus(n: usize) -> Self {
        LieElement::PPlus {
            x: GMat::identity(n).neg(),
        }
    }

    /// X^- = [[1,-1],[1,-1]] block form: p^- with x = I.
    pub fn x_minus(n: usize) -> Self {
        LieElement::PMinus {
            x: GMat::identity(n),
        }
    }

    pub fn rank(&self) -> usize {
        match self {
            LieElement::KC { a, .. } => a.n,
            LieElement::PPlus { x } | LieElement::PMinus { x } => x.n,
        }
    }

    /// The 2n x 2n matrix of this element.
    pub fn embed(&self) -> GMat {
        let n = self.rank();
        let mut m = GMat::zeros(2 * n);
        let put = |m: &mut GMat, bi: usize, bj: usize, blk: &GMat, negate: bool| {
            for i in 0..n {
                for j in 0..n {
                    let c = blk.get(i, j);
                    m.set(bi * n + i, bj * n + j, if negate { -&c } else { c });
                }
            }
        };
        match self {
            LieElement::KC { a, b } => {
                put(&mut m, 0, 0, a, false);
                put(&mut m, 0, 1, b, false);
                put(&mut m, 1, 0, b, false);
                put(&mut m, 1, 1, a, false);
            }
            LieElement::PPlus { x } => {
                put(&mut m, 0, 0, x, false);
                put(&mut m, 0, 1, x, false);
                put(&mut m, 1, 0, x, true);
                put(&mut m, 1, 1, x, true);
            }
            LieElement::PMinus { x } => {
                put(&mut m, 0, 0, x, false);
                put(&mut m, 0, 1, x, true);
                put(&mut m, 1, 0, x, false);
                put(&mut m, 1, 1, x, true);
            }
        }
        m
    }

    /// Classify a 2n x 2n matrix back into one of the three block shapes,
    /// if it fits exactly.
    pub fn from_embedding(m: &GMat) -> Option<LieElement> {
        if m.n % 2 != 0 {
            return None;
        }
        let n = m.n / 2;
        let block = |bi: usize, bj: usize| {
            let mut blk = GMat::zeros(n);
            for i in 0..n {
                for j in 0..n {
                    blk.set(i, j, m.get(bi * n + i, bj * n + j));
                }
            }
            blk
        };
        let (a, b, c, d) = (block(0, 0), block(0, 1), block(1, 0), block(1, 1));
        if d == a && c == b && a.trace().is_zero() {
            return Some(LieElement::KC { a, b });
        }
        if b == a && c == a.neg() && d == a.neg() && a.is_hermitian() {
            return Some(LieElement::PPlus { x: a });
        }
        if b == a.neg() && c == a && d == a.neg() && a.is_hermitian() {
            return Some(LieElement::PMinus { x: a });
        }
        None
    }

    /// Matrix bracket [X, Y] in sl(2n, C).
    pub fn bracket(x: &LieElement, y: &LieElement) -> GMat {
        let mx = x.embed();
        let my = y.embed();
        mx.mul(&my).sub(&my.mul(&mx))
    }
}

/// Second-order differential operator with polynomial coefficients:
/// f -> sum c2_{(k,i),(j,l)} D_{k,i} D_{j,l} f + sum c1_{i,j} D_{i,j} f + c0 f.
/// Coefficients multiply after differentiation (normal ordering).
#[derive(Clone, PartialEq, Debug)]
pub struct LinDiffOp {
    pub n: usize,
    c2: BTreeMap<(usize, usize, usize, usize), MultiPoly>,
    c1: BTreeMap<(usize, usize), MultiPoly>,
    c0: MultiPoly,
}

impl LinDiffOp {
    pub fn zero(n: usize) -> Self {
        LinDiffOp {
            n,
            c2: BTreeMap::new(),
            c1: BTreeMap::new(),
            c0: MultiPoly::zero(n * n),
        }
    }

    pub fn add_c2(&mut self, key: (usize, usize, usize, usize), p: MultiPoly) {
        if p.is_zero() {
            return;
        }
        match self.c2.entry(key) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(p);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let merged = e.get().add(&p);
                if merged.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = merged;
                }
            }
        }
    }

    pub fn add_c1(&mut self, key: (usize, usize), p: MultiPoly) {
        if p.is_zero() {
            return;
        }
        match self.c1.entry(key) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(p);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let merged = e.get().add(&p);
                if merged.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = merged;
                }
            }
        }
    }

    pub fn add_c0(&mut self, p: &MultiPoly) {
        self.c0 = self.c0.add(p);
    }

    pub fn add(&self, other: &LinDiffOp) -> LinDiffOp {
        let mut out = self.clone();
        for (k, p) in &other.c2 {
            out.add_c2(*k, p.clone());
        }
        for (k, p) in &other.c1 {
            out.add_c1(*k, p.clone());
        }
        out.add_c0(&other.c0);
        out
    }

    pub fn sub(&self, other: &LinDiffOp) -> LinDiffOp {
        self.add(&other.scale(&GaussRat::from_i64(-1)))
    }

    pub fn scale(&self, c: &GaussRat) -> LinDiffOp {
        if c.is_zero() {
            return LinDiffOp::zero(self.n);
        }
        LinDiffOp {
            n: self.n,
            c2: self.c2.iter().map(|(k, p)| (*k, p.scale(c))).collect(),
            c1: self.c1.iter().map(|(k, p)| (*k, p.scale(c))).collect(),
            c0: self.c0.scale(c),
        }
    }

    pub fn scale_rat(&self, c: &Rat) -> LinDiffOp {
        self.scale(&GaussRat::from_rat(c.clone()))
    }

    /// Exact application to an ExpPoly; linear in f.
    pub fn apply(&self, f: &ExpPoly) -> ExpPoly {
        assert_eq!(self.n, f.n, "operator/function rank mismatch");
        let mut out = ExpPoly::zero(self.n);
        for (&(k, i, j, l), coeff) in &self.c2 {
            let inner = f.d_entry(j, l).expect("valid index");
            let dd = inner.d_entry(k, i).expect("valid index");
            out = out.add(&ExpPoly {
                n: self.n,
                p: coeff.mul(&dd.p),
            });
        }
        for (&(i, j), coeff) in &self.c1 {
            let d = f.d_entry(i, j).expect("valid index");
            out = out.add(&ExpPoly {
                n: self.n,
                p: coeff.mul(&d.p),
            });
        }
        out.add(&ExpPoly {
            n: self.n,
            p: self.c0.mul(&f.p),
        })
    }

    /// JSON dump with c2/c1/c0 coefficient polynomials in canonical form.
    pub fn to_json(&self) -> serde_json::Value {
        let c2: Vec<serde_json::Value> = self
            .c2
            .iter()
            .map(|(&(k, i, j, l), p)| {
                serde_json::json!({
                    "outer": [k, i],
                    "inner": [j, l],
                    "coefficient": p.to_canonical_json(),
                })
            })
            .collect();
        let c1: Vec<serde_json::Value> = self
            .c1
            .iter()
            .map(|(&(i, j), p)| {
                serde_json::json!({
                    "entry": [i, j],
                    "coefficient": p.to_canonical_json(),
                })
            })
            .collect();
        serde_json::json!({
            "n": self.n,
            "c2": c2,
            "c1": c1,
            "c0": self.c0.to_canonical_json(),
        })
    }
}

fn poly_mat_mul_const(s: &[Vec<MultiPoly>], g: &GMat, nv: usize) -> Vec<Vec<MultiPoly>> {
    let n = g.n;
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let mut acc = MultiPoly::zero(nv);
                    for k in 0..n {
                        acc = acc.add(&s[i][k].scale(&g.get(k, j)));
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

fn const_mul_poly_mat(g: &GMat, s: &[Vec<MultiPoly>], nv: usize) -> Vec<Vec<MultiPoly>> {
    let n = g.n;
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let mut acc = MultiPoly::zero(nv);
                    for k in 0..n {
                        acc = acc.add(&s[k][j].scale(&g.get(i, k)));
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

/// The differential operator lambda_nu(X) of the highest weight
/// representation, for X in one of the three block shapes:
/// k_C: tr(-s nabla b nabla + (sa - as - nu b) nabla + bs);
/// p^+: tr( s nabla x nabla + (nu x + sx + xs) nabla + (nu x + sx));
/// p^-: tr(-s nabla x nabla + (-nu x + sx + xs) nabla + (nu x - sx)).
pub fn lambda_op(x_elt: &LieElement, nu: &Rat) -> LinDiffOp {
    let n = x_elt.rank();
    let nv = n * n;
    let hc = HermCoords::new(n);
    let s = hc.entry_matrix();
    let nu_g = GaussRat::from_rat(nu.clone());

    let (second, sign2, first, zeroth): (&GMat, i64, Vec<Vec<MultiPoly>>, MultiPoly) = match x_elt
    {
        LieElement::KC { a, b } => {
            // first-order coefficient matrix: s a - a s - nu b
            let sa = poly_mat_mul_const(&s, a, nv);
            let a_s = const_mul_poly_mat(a, &s, nv);
            let mut first = vec![vec![MultiPoly::zero(nv); n]; n];
            for i in 0..n {
                for j in 0..n {
                    first[i][j] = sa[i][j]
                        .sub(&a_s[i][j])
                        .sub(&MultiPoly::constant(nv, &b.get(i, j) * &nu_g));
                }
            }
            // zeroth order: tr(b s) = sum b_{i,j} s_{j,i}
            let mut z = MultiPoly::zero(nv);
            for i in 0..n {
                for j in 0..n {
                    z = z.add(&s[j][i].scale(&b.get(i, j)));
                }
            }
            (b, -1, first, z)
        }
        LieElement::PPlus { x } => {
            let sx = poly_mat_mul_const(&s, x, nv);
            let xs = const_mul_poly_mat(x, &s, nv);
            let mut first = vec![vec![MultiPoly::zero(nv); n]; n];
            for i in 0..n {
                for j in 0..n {
                    first[i][j] = sx[i][j]
                        .add(&xs[i][j])
                        .add(&MultiPoly::constant(nv, &x.get(i, j) * &nu_g));
                }
            }
            // zeroth: nu tr(x) + tr(s x)
            let mut z = MultiPoly::constant(nv, &x.trace() * &nu_g);
            for i in 0..n {
                for k in 0..n {
                    z = z.add(&s[i][k].scale(&x.get(k, i)));
                }
            }
            (x, 1, first, z)
        }
        LieElement::PMinus { x } => {
            let sx = poly_mat_mul_const(&s, x, nv);
            let xs = const_mul_poly_mat(x, &s, nv);
            let mut first = vec![vec![MultiPoly::zero(nv); n]; n];
            for i in 0..n {
                for j in 0..n {
                    first[i][j] = sx[i][j]
                        .add(&xs[i][j])
                        .sub(&MultiPoly::constant(nv, &x.get(i, j) * &nu_g));
                }
            }
            // zeroth: nu tr(x) - tr(s x)
            let mut z = MultiPoly::constant(nv, &x.trace() * &nu_g);
            for i in 0..n {
                for k in 0..n {
                    z = z.add(&s[i][k].scale(&x.get(k, i)).neg());
                }
            }
            (x, -1, first, z)
        }
    };

    let mut op = LinDiffOp::zero(n);
    // tr(sign * s nabla x nabla): sum s_{j,i} x_{k,l} D_{k,i} D_{j,l}
    let sgn = GaussRat::from_i64(sign2);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for l in 0..n {
                    let xc = second.get(k, l);
                    if xc.is_zero() {
                        continue;
                    }
                    op.add_c2((k, i, j, l), s[j][i].scale(&(&xc * &sgn)));
                }
            }
        }
    }
    // tr(A nabla) f = sum A_{i,j} D_{i,j} f
    for (i, row) in first.into_iter().enumerate() {
        for (j, p) in row.into_iter().enumerate() {
            op.add_c1((i, j), p);
        }
    }
    op.add_c0(&zeroth);
    op
}

/// E_nu = nu r + 2E: f -> nu n f + 2 tr(s nabla) f. Equals
/// (lambda_nu(X^-) - lambda_nu(X^+)) / 2 as an exact operator.
pub fn euler_op(nu: &Rat, n: usize) -> LinDiffOp {
    let nv = n * n;
    let hc = HermCoords::new(n);
    let s = hc.entry_matrix();
    let mut op = LinDiffOp::zero(n);
    for i in 0..n {
        for j in 0..n {
            op.add_c1((i, j), s[i][j].scale(&GaussRat::from_i64(2)));
        }
    }
    op.add_c0(&MultiPoly::constant(
        nv,
        GaussRat::from_rat(nu * crate::rational::rat(n as i64)),
    ));
    op
}

/// Hermitian basis direction matrices for finite differences.
fn herm_direction(n: usize, kind: Direction) -> DMatrix<Complex64> {
    let mut m = DMatrix::<Complex64>::zeros(n, n);
    match kind {
        Direction::Diag(i) => m[(i, i)] = Complex64::new(1.0, 0.0),
        Direction::ReOff(i, j) => {
            m[(i, j)] = Complex64::new(1.0, 0.0);
            m[(j, i)] = Complex64::new(1.0, 0.0);
        }
        Direction::ImOff(i, j) => {
            m[(i, j)] = Complex64::new(0.0, 1.0);
            m[(j, i)] = Complex64::new(0.0, -1.0);
        }
    }
    m
}

#[derive(Clone, Copy)]
enum Direction {
    Diag(usize),
    ReOff(usize, usize),
    ImOff(usize, usize),
}

type Callable<'a> = &'a dyn Fn(&DMatrix<Complex64>) -> Complex64;

fn central_diff(f: Callable, s: &DMatrix<Complex64>, dir: &DMatrix<Complex64>, h: f64) -> Complex64 {
    let hp = s + dir * Complex64::new(h, 0.0);
    let hm = s - dir * Complex64::new(h, 0.0);
    (f(&hp) - f(&hm)) / Complex64::new(2.0 * h, 0.0)
}

/// Numeric entry derivative D_{i,j} f at s via central differences.
fn numeric_d_entry(f: Callable, s: &DMatrix<Complex64>, i: usize, j: usize, h: f64) -> Complex64 {
    let n = s.nrows();
    if i == j {
        return central_diff(f, s, &herm_direction(n, Direction::Diag(i)), h);
    }
    let (a, b, im_sign) = if i < j { (i, j, -1.0) } else { (j, i, 1.0) };
    let du = central_diff(f, s, &herm_direction(n, Direction::ReOff(a, b)), h);
    let dv = central_diff(f, s, &herm_direction(n, Direction::ImOff(a, b)), h);
    (du + Complex64::new(0.0, im_sign) * dv) * 0.5
}

fn numeric_lambda_once(
    x_elt: &LieElement,
    nu: f64,
    f: Callable,
    s: &DMatrix<Complex64>,
    h: f64,
) -> Complex64 {
    let n = s.nrows();
    let (xc, sign2, a_opt) = match x_elt {
        LieElement::KC { a, b } => (b.to_complex(), -1.0, Some(a.to_complex())),
        LieElement::PPlus { x } => (x.to_complex(), 1.0, None),
        LieElement::PMinus { x } => (x.to_complex(), -1.0, None),
    };

    let mut total = Complex64::new(0.0, 0.0);

    // second order: sign * sum s_{j,i} x_{k,l} D_{k,i} D_{j,l} f
    for i in 0..n {
        for j in 0..n {
            let sji = s[(j, i)];
            if sji.norm() == 0.0 {
                // still fine to skip: coefficient multiplies the derivative
                continue;
            }
            for k in 0..n {
                for l in 0..n {
                    let c = xc[(k, l)];
                    if c.norm() == 0.0 {
                        continue;
                    }
                    let inner = |m: &DMatrix<Complex64>| numeric_d_entry(f, m, j, l, h);
                    let dd = numeric_d_entry(&inner, s, k, i, h);
                    total += Complex64::new(sign2, 0.0) * sji * c * dd;
                }
            }
        }
    }

    // first order coefficient matrix and zeroth order scalar
    let nu_c = Complex64::new(nu, 0.0);
    let (first, zeroth): (DMatrix<Complex64>, Complex64) = match x_elt {
        LieElement::KC { .. } => {
            let a = a_opt.unwrap();
            let first = s * &a - &a * s - &xc * nu_c;
            let zeroth = (&xc * s).trace();
            (first, zeroth)
        }
        LieElement::PPlus { .. } => {
            let first = &xc * nu_c + s * &xc + &xc * s;
            let zeroth = xc.trace() * nu_c + (s * &xc).trace();
            (first, zeroth)
        }
        LieElement::PMinus { .. } => {
            let first = s * &xc + &xc * s - &xc * nu_c;
            let zeroth = xc.trace() * nu_c - (s * &xc).trace();
            (first, zeroth)
        }
    };
    for i in 0..n {
        for j in 0..n {
            let c = first[(i, j)];
            if c.norm() == 0.0 {
                continue;
            }
            total += c * numeric_d_entry(f, s, i, j, h);
        }
    }
    total + zeroth * f(s)
}

/// Finite-difference evaluation of lambda_nu(X) f at an interior point.
/// Returns the Richardson-extrapolated value and a warning flag set when
/// the extrapolation disagrees with the base estimate by more than 1e-4
/// relative.
pub fn numeric_apply(
    x_elt: &LieElement,
    nu: f64,
    f: Callable,
    s: &HermMatrix,
    h: Option<f64>,
) -> Result<(Complex64, bool)> {
    if x_elt.rank() != s.n() {
        return Err(HermlagError::Dimension(
            "numeric_apply: rank mismatch".into(),
        ));
    }
    let h0 = h.unwrap_or_else(|| 1e-4 * (1.0 + s.mat.norm()));
    let v1 = numeric_lambda_once(x_elt, nu, f, &s.mat, h0);
    let v2 = numeric_lambda_once(x_elt, nu, f, &s.mat, h0 / 2.0);
    let extrap = (v2 * 4.0 - v1) / 3.0;
    let scale = extrap.norm().max(v2.norm()).max(1e-300);
    let warning = (extrap - v2).norm() / scale > 1e-4;
    Ok((extrap, warning))
}
