//! Numeric verification layer: invariant integrals over the cone via the
//! eigenvalue density, the Laplace transform, the holomorphic-side operators
//! pi_nu on the tube domain, and the intertwining residual
//! pi_nu(X) (L f) - L(lambda_nu(X) f).
//!
//! The eigenvalue reduction for L-invariant integrands is
//! int_Omega f dmu_nu = k_n int_{(0,inf)^n} f(lam) V(lam)^2 prod lam^{nu-n}
//! e^{-sum lam} dlam with V the Vandermonde; k_n is calibrated at runtime
//! from the cone Gamma identity, never hard-coded, so its nu-independence
//! is a free correctness check.

use nalgebra::DMatrix;
use num_complex::Complex64;
use statrs::function::gamma::gamma;

use crate::combinatorics::gindikin_gamma;
use crate::error::{HermlagError, Result};
use crate::matrixcalc::{euler_op, lambda_op, ExpPoly, LieElement, LinDiffOp};
use crate::polyalgebra::{CompiledPoly, HermMatrix};
use crate::rational::{rat_to_f64, Rat};

/// Gauss nodes and weights for one scalar weight function.
#[derive(Clone, Debug)]
pub struct QuadratureRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

/// Orthonormal-polynomial recurrence for the Jacobi data (a_k, b_k):
/// returns (p_N(x), p_N'(x), sum_{k<N} p_k(x)^2).
fn ortho_eval(diag: &[f64], offdiag: &[f64], mu0: f64, x: f64) -> (f64, f64, f64) {
    let n = diag.len();
    let mut p_prev = 0.0;
    let mut p = 1.0 / mu0.sqrt();
    let mut dp_prev = 0.0;
    let mut dp = 0.0;
    let mut sum_sq = p * p;
    for k in 0..n {
        let b_next = if k + 1 <= n - 1 { offdiag[k] } else { 1.0 };
        let b_k = if k == 0 { 0.0 } else { offdiag[k - 1] };
        let p_next = ((x - diag[k]) * p - b_k * p_prev) / b_next;
        let dp_next = (p + (x - diag[k]) * dp - b_k * dp_prev) / b_next;
        p_prev = p;
        p = p_next;
        dp_prev = dp;
        dp = dp_next;
        if k + 1 < n {
            sum_sq += p * p;
        }
    }
    (p, dp, sum_sq)
}

/// Golub-Welsch on a symmetric tridiagonal Jacobi matrix; eigenvalues seed
/// Newton polishing on p_N and the weights come from the Christoffel sums,
/// which is far more accurate than raw eigenvector components.
fn golub_welsch(diag: &[f64], offdiag: &[f64], mu0: f64) -> QuadratureRule {
    let n = diag.len();
    let mut j = DMatrix::<f64>::zeros(n, n);
    for i in 0..n {
        j[(i, i)] = diag[i];
    }
    for i in 0..n - 1 {
        j[(i, i + 1)] = offdiag[i];
        j[(i + 1, i)] = offdiag[i];
    }
    let eig = j.symmetric_eigen();
    let mut nodes: Vec<f64> = eig.eigenvalues.iter().cloned().collect();
    nodes.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let mut weights = Vec::with_capacity(n);
    for x in nodes.iter_mut() {
        for _ in 0..4 {
            let (p, dp, _) = ortho_eval(diag, offdiag, mu0, *x);
            if dp == 0.0 {
                break;
            }
            let step = p / dp;
            *x -= step;
            if step.abs() <= 1e-15 * x.abs().max(1.0) {
                break;
            }
        }
        let (_, _, sum_sq) = ortho_eval(diag, offdiag, mu0, *x);
        weights.push(1.0 / sum_sq);
    }
    QuadratureRule { nodes, weights }
}

impl QuadratureRule {
    /// Generalized Gauss-Laguerre for the weight lam^alpha e^{-lam} on
    /// (0, inf); exact on polynomials of degree <= 2 order - 1.
    pub fn gauss_laguerre(order: usize, alpha: f64) -> Result<Self> {
        if alpha <= -1.0 {
            return Err(HermlagError::Domain(format!(
                "Gauss-Laguerre needs alpha > -1, got {alpha}"
            )));
        }
        if order == 0 {
            return Err(HermlagError::Domain("quadrature order 0".into()));
        }
        let diag: Vec<f64> = (0..order).map(|k| 2.0 * k as f64 + alpha + 1.0).collect();
        let off: Vec<f64> = (1..order)
            .map(|k| ((k as f64) * (k as f64 + alpha)).sqrt())
            .collect();
        Ok(golub_welsch(&diag, &off, gamma(alpha + 1.0)))
    }

    /// Gauss-Legendre on [-1, 1].
    pub fn gauss_legendre(order: usize) -> Result<Self> {
        if order == 0 {
            return Err(HermlagError::Domain("quadrature order 0".into()));
        }
        let diag = vec![0.0; order];
        let off: Vec<f64> = (1..order)
            .map(|k| {
                let k = k as f64;
                k / (4.0 * k * k - 1.0).sqrt()
            })
            .collect();
        Ok(golub_welsch(&diag, &off, 2.0))
    }
}

fn vandermonde_sq(lam: &[f64]) -> f64 {
    let mut v = 1.0;
    for i in 0..lam.len() {
        for j in (i + 1)..lam.len() {
            let d = lam[i] - lam[j];
            v *= d * d;
        }
    }
    v
}

/// Raw eigenvalue integral
/// int g(lam) V(lam)^2 prod lam^{nu-n} e^{-sum lam} dlam
/// by a tensor Gauss-Laguerre grid, summed in a fixed deterministic order.
pub fn raw_eigenvalue_integral(
    g: &dyn Fn(&[f64]) -> f64,
    nu: f64,
    n: usize,
    order: usize,
) -> Result<f64> {
    if nu <= n as f64 - 1.0 {
        return Err(HermlagError::Domain(format!(
            "eigenvalue density needs nu > n-1, got nu={nu}, n={n}"
        )));
    }
    let rule = QuadratureRule::gauss_laguerre(order, nu - n as f64)?;
    let mut total = 0.0;
    let mut idx = vec![0usize; n];
    let mut lam = vec![0.0f64; n];
    loop {
        let mut w = 1.0;
        for d in 0..n {
            lam[d] = rule.nodes[idx[d]];
            w *= rule.weights[idx[d]];
        }
        total += w * vandermonde_sq(&lam) * g(&lam);
        // odometer increment
        let mut d = 0;
        loop {
            if d == n {
                return Ok(total);
            }
            idx[d] += 1;
            if idx[d] < order {
                break;
            }
            idx[d] = 0;
            d += 1;
        }
    }
}

/// Calibration constant k_n = Gamma_Omega(nu) / raw(1). Independent of nu,
/// which is tested rather than assumed.
pub fn calibration_constant(nu: f64, n: usize, order: usize) -> Result<f64> {
    let raw = raw_eigenvalue_integral(&|_| 1.0, nu, n, order)?;
    Ok(gindikin_gamma(nu, n)? / raw)
}

/// Invariant integral of f over the cone against dmu_nu. f receives the
/// eigenvalue list and must return the value of the (L-invariant) function
/// at any matrix with those eigenvalues; its own decay must beat e^{-sum}.
/// The warning flag is set when doubling the order moves the value by more
/// than 1e-8 relative.
pub fn invariant_integral(
    f: &dyn Fn(&[f64]) -> f64,
    nu: f64,
    n: usize,
    order: usize,
) -> Result<(f64, bool)> {
    let k = calibration_constant(nu, n, order)?;
    let g = |lam: &[f64]| {
        let s: f64 = lam.iter().sum();
        f(lam) * s.exp()
    };
    let coarse = k * raw_eigenvalue_integral(&g, nu, n, order)?;
    let fine = k * raw_eigenvalue_integral(&g, nu, n, 2 * order)?;
    let scale = fine.abs().max(coarse.abs()).max(1e-300);
    Ok((fine, (fine - coarse).abs() / scale > 1e-8))
}

/// Evaluate an ExpPoly body at the diagonal matrix diag(lam), using that
/// off-diagonal coordinates vanish there.
fn body_at_diag(p: &CompiledPoly, lam: &[f64], n: usize) -> f64 {
    let mut coords = vec![0.0; n * n];
    coords[..n].copy_from_slice(lam);
    p.eval(&coords).re
}

/// <f, g> in L^2(Omega, dmu_nu) for L-invariant f, g of the form
/// e^{-tr s} p(s). The substitution u = 2 lam makes the integrand a pure
/// polynomial against the Gauss-Laguerre weight, so the quadrature is exact
/// once the order covers the degree.
pub fn inner_product(f: &ExpPoly, g: &ExpPoly, nu: f64, n: usize, order: usize) -> Result<f64> {
    if f.n != n || g.n != n {
        return Err(HermlagError::Dimension("inner_product: rank mismatch".into()));
    }
    let deg = (f.p.total_degree() + g.p.total_degree()) as usize;
    let needed = (deg + 2 * (n.saturating_sub(1)) + 2) / 2 + 1;
    let order = order.max(needed);
    let fc = f.p.compile();
    let gc = g.p.compile();
    let k = calibration_constant(nu, n, order)?;
    let raw = raw_eigenvalue_integral(
        &|u: &[f64]| {
            let lam: Vec<f64> = u.iter().map(|x| x / 2.0).collect();
            body_at_diag(&fc, &lam, n) * body_at_diag(&gc, &lam, n)
        },
        nu,
        n,
        order,
    )?;
    Ok(k * raw * (2f64).powf(-(n as f64) * nu))
}

/// Point of the tube domain: z with positive-definite Hermitian real part.
#[derive(Clone, Debug)]
pub struct TubePoint {
    pub z: DMatrix<Complex64>,
}

impl TubePoint {
    pub fn new(z: DMatrix<Complex64>) -> Result<Self> {
        if z.nrows() != z.ncols() {
            return Err(HermlagError::Shape("TubePoint: non-square".into()));
        }
        let x = hermitian_part(&z);
        let min = HermMatrix::new(x)?
            .eigenvalues()
            .into_iter()
            .fold(f64::INFINITY, f64::min);
        if min <= 0.0 {
            return Err(HermlagError::Domain(format!(
                "TubePoint: Re z not positive definite (min eig {min})"
            )));
        }
        Ok(TubePoint { z })
    }

    pub fn from_real(x: f64) -> Result<Self> {
        TubePoint::new(DMatrix::from_element(1, 1, Complex64::new(x, 0.0)))
    }

    pub fn n(&self) -> usize {
        self.z.nrows()
    }
}

fn hermitian_part(z: &DMatrix<Complex64>) -> DMatrix<Complex64> {
    (z + z.adjoint()) * Complex64::new(0.5, 0.0)
}

fn min_eig_hermitian_part(w: &DMatrix<Complex64>) -> Result<f64> {
    let h = HermMatrix::new(hermitian_part(w))?;
    Ok(h.eigenvalues().into_iter().fold(f64::INFINITY, f64::min))
}

/// Adaptive Simpson on [a, b] for a complex integrand.
fn adaptive_simpson(
    f: &dyn Fn(f64) -> Complex64,
    a: f64,
    b: f64,
    tol: f64,
) -> (Complex64, bool) {
    fn simpson(fa: Complex64, fm: Complex64, fb: Complex64, h: f64) -> Complex64 {
        (fa + fm * 4.0 + fb) * (h / 6.0)
    }
    fn recurse(
        f: &dyn Fn(f64) -> Complex64,
        a: f64,
        b: f64,
        fa: Complex64,
        fm: Complex64,
        fb: Complex64,
        whole: Complex64,
        tol: f64,
        depth: u32,
        hit_floor: &mut bool,
    ) -> Complex64 {
        let m = 0.5 * (a + b);
        let lm = 0.5 * (a + m);
        let rm = 0.5 * (m + b);
        let flm = f(lm);
        let frm = f(rm);
        let left = simpson(fa, flm, fm, m - a);
        let right = simpson(fm, frm, fb, b - m);
        let delta = left + right - whole;
        if delta.norm() <= 15.0 * tol || depth == 0 {
            if depth == 0 && delta.norm() > 15.0 * tol {
                *hit_floor = true;
            }
            return left + right + delta / 15.0;
        }
        recurse(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1, hit_floor)
            + recurse(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1, hit_floor)
    }
    let m = 0.5 * (a + b);
    let (fa, fm, fb) = (f(a), f(m), f(b));
    let whole = simpson(fa, fm, fb, b - a);
    let mut hit_floor = false;
    let v = recurse(f, a, b, fa, fm, fb, whole, tol, 48, &mut hit_floor);
    (v, hit_floor)
}

/// Laplace transform core at rank 1:
/// int_0^L e^{-(z+1) t} p(t) t^{nu-1} dt, adaptive to ~1e-10 relative.
fn laplace_rank1(
    p: &CompiledPoly,
    z: Complex64,
    nu: f64,
    length: f64,
) -> (Complex64, bool) {
    let w = z + Complex64::new(1.0, 0.0);
    let integrand = move |t: f64| -> Complex64 {
        if t <= 0.0 {
            if nu > 1.0 {
                return Complex64::new(0.0, 0.0);
            }
            // nu = 1 endpoint: t^0 = 1
            return p.eval(&[0.0]);
        }
        (-w * t).exp() * p.eval(&[t]) * t.powf(nu - 1.0)
    };
    // crude magnitude for the absolute tolerance
    let scale = gamma(nu) / min_eig_rank1(w).powf(nu);
    adaptive_simpson(&integrand, 0.0, length, 1e-12 * scale.max(1e-30))
}

fn min_eig_rank1(w: Complex64) -> f64 {
    w.re.max(1e-12)
}

fn rank1_length(w_re: f64, nu: f64, deg: u32) -> f64 {
    (60.0 + 6.0 * (nu + deg as f64)) / w_re.max(1e-6)
}

/// Laplace transform core at rank 2 via the Cholesky chart s = T* T with
/// T = [[t11, t12], [0, t22]], t11, t22 > 0, t12 = x + i y; the volume
/// element is 4 t11^3 t22 dt11 dt22 dx dy. The box edge L is supplied by
/// the caller so nearby z share the same grid.
fn laplace_rank2(
    p: &CompiledPoly,
    z: &DMatrix<Complex64>,
    nu: f64,
    length: f64,
    order: usize,
) -> Result<Complex64> {
    let w = z + DMatrix::<Complex64>::identity(2, 2);
    let gl = QuadratureRule::gauss_legendre(order)?;
    // map [-1,1] to (0, L] for diagonals, [-L, L] for the off-diagonal parts
    let pos_nodes: Vec<(f64, f64)> = gl
        .nodes
        .iter()
        .zip(&gl.weights)
        .map(|(&x, &wt)| (0.5 * length * (x + 1.0), 0.5 * length * wt))
        .collect();
    let sym_nodes: Vec<(f64, f64)> = gl
        .nodes
        .iter()
        .zip(&gl.weights)
        .map(|(&x, &wt)| (length * x, length * wt))
        .collect();

    let (w00, w01, w10, w11) = (w[(0, 0)], w[(0, 1)], w[(1, 0)], w[(1, 1)]);
    let mut total = Complex64::new(0.0, 0.0);
    let mut coords = [0.0f64; 4];
    for &(t11, wt1) in &pos_nodes {
        for &(t22, wt2) in &pos_nodes {
            for &(x, wt3) in &sym_nodes {
                for &(y, wt4) in &sym_nodes {
                    // s = T* T
                    let s00 = t11 * t11;
                    let s11 = x * x + y * y + t22 * t22;
                    let s01 = Complex64::new(t11 * x, t11 * y);
                    // tr(w s) with s10 = conj(s01)
                    let tr_ws = w00 * s00 + w01 * s01.conj() + w10 * s01 + w11 * s11;
                    let det_s = (t11 * t22) * (t11 * t22);
                    coords[0] = s00;
                    coords[1] = s11;
                    coords[2] = s01.re;
                    coords[3] = s01.im;
                    let val = (-tr_ws).exp()
                        * p.eval(&coords)
                        * det_s.powf(nu - 2.0)
                        * (4.0 * t11 * t11 * t11 * t22);
                    total += val * (wt1 * wt2 * wt3 * wt4);
                }
            }
        }
    }
    Ok(total)
}

/// L_nu(f)(z) = int_Omega e^{-tr(z s)} f(s) det(s)^{nu-n} ds for
/// f = e^{-tr s} p(s). Requires the Hermitian part of z + I to be positive
/// definite. Ranks 1 and 2 only. The warning flag reports a convergence
/// check failure (adaptive floor at rank 1, order refinement at rank 2).
pub fn laplace(f: &ExpPoly, z: &TubePoint, nu: f64, order: usize) -> Result<(Complex64, bool)> {
    laplace_at(f, &z.z, nu, order)
}

/// Same as laplace but on a raw matrix z; only z + I needs a positive
/// definite Hermitian part (the tube constraint relaxed by the e^{-tr s}
/// factor inside f).
pub fn laplace_at(
    f: &ExpPoly,
    z: &DMatrix<Complex64>,
    nu: f64,
    order: usize,
) -> Result<(Complex64, bool)> {
    let n = f.n;
    if z.nrows() != n || z.ncols() != n {
        return Err(HermlagError::Dimension("laplace: rank mismatch".into()));
    }
    let wmin = min_eig_hermitian_part(&(z + DMatrix::<Complex64>::identity(n, n)))?;
    if wmin <= 0.0 {
        return Err(HermlagError::Domain(
            "laplace: Hermitian part of z + I not positive definite".into(),
        ));
    }
    let p = f.p.compile();
    match n {
        1 => {
            let length = rank1_length(wmin, nu, f.p.total_degree());
            let (v, hit_floor) = laplace_rank1(&p, z[(0, 0)], nu, length);
            Ok((v, hit_floor))
        }
        2 => {
            let length = (40.0 / wmin).sqrt();
            let coarse = laplace_rank2(&p, z, nu, length, order)?;
            let fine = laplace_rank2(&p, z, nu, length, order + order / 2 + 4)?;
            let scale = fine.norm().max(coarse.norm()).max(1e-300);
            Ok((fine, (fine - coarse).norm() / scale > 1e-4))
        }
        _ => Err(HermlagError::Domain(
            "laplace implemented for n <= 2".into(),
        )),
    }
}

/// Direct quadrature of the cone Gamma integral
/// int_Omega e^{-tr x} det(x)^{nu-n} dx, independent of the calibrated
/// eigenvalue reduction. Cross-checks the closed form.
pub fn gamma_quadrature(nu: f64, n: usize, order: usize) -> Result<f64> {
    let f = ExpPoly::ground(n);
    let zero = DMatrix::<Complex64>::zeros(n, n);
    let (v, _) = laplace_at(&f, &zero, nu, order)?;
    Ok(v.re)
}

type Holomorphic<'a> = &'a dyn Fn(&DMatrix<Complex64>) -> Complex64;

/// delta(w)F(z): derivative of t -> F(z + t w) at t = 0, central difference.
fn delta_dir(f: Holomorphic, z: &DMatrix<Complex64>, w: &DMatrix<Complex64>, h: f64) -> Complex64 {
    let hp = z + w * Complex64::new(h, 0.0);
    let hm = z - w * Complex64::new(h, 0.0);
    (f(&hp) - f(&hm)) / Complex64::new(2.0 * h, 0.0)
}

fn pi_once(
    x_elt: &LieElement,
    nu: f64,
    f: Holomorphic,
    z: &DMatrix<Complex64>,
    h: f64,
) -> Complex64 {
    let n = z.nrows();
    let id = DMatrix::<Complex64>::identity(n, n);
    match x_elt {
        LieElement::KC { a, b } => {
            let (a, b) = (a.to_complex(), b.to_complex());
            let w = z * &b * z + z * &a - &a * z - &b;
            Complex64::new(nu, 0.0) * (&b * z).trace() * f(z) + delta_dir(f, z, &w, h)
        }
        LieElement::PPlus { x } => {
            let x = x.to_complex();
            let zp = z + &id;
            let w = &zp * &x * &zp;
            -Complex64::new(nu, 0.0) * (&x * &zp).trace() * f(z) - delta_dir(f, z, &w, h)
        }
        LieElement::PMinus { x } => {
            let x = x.to_complex();
            let zm = z - &id;
            let w = &zm * &x * &zm;
            Complex64::new(nu, 0.0) * (&x * &zm).trace() * f(z) + delta_dir(f, z, &w, h)
        }
    }
}

/// pi_nu(X) F at z, Richardson-extrapolated over steps h, h/2, h/4; the
/// warning flag is set when the two successive extrapolated estimates
/// disagree by more than 1e-6 relative (step-refinement check).
pub fn pi_op(
    x_elt: &LieElement,
    nu: f64,
    f: Holomorphic,
    z: &DMatrix<Complex64>,
    h: f64,
) -> Result<(Complex64, bool)> {
    if x_elt.rank() != z.nrows() || h <= 0.0 {
        return Err(HermlagError::Domain("pi_op: bad rank or step".into()));
    }
    let v1 = pi_once(x_elt, nu, f, z, h);
    let v2 = pi_once(x_elt, nu, f, z, h / 2.0);
    let v3 = pi_once(x_elt, nu, f, z, h / 4.0);
    let e12 = (v2 * 4.0 - v1) / 3.0;
    let e23 = (v3 * 4.0 - v2) / 3.0;
    // scale includes |F(z)| so that an identically-zero output (a valid
    // result, e.g. annihilated states) does not read as divergence
    let scale = e23.norm().max(e12.norm()).max(f(z).norm()).max(1e-300);
    Ok((e23, (e23 - e12).norm() / scale > 1e-6))
}

/// The four distinguished elements used on the verification grids. Z is not
/// itself one of the three block shapes; it acts through the combination
/// Z = (X^- - X^+)/2, whose exact operator is E_nu = nu n + 2 tr(s nabla).
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum GridOp {
    Xi,
    XPlus,
    XMinus,
    Z,
}

impl GridOp {
    pub fn name(&self) -> &'static str {
        match self {
            GridOp::Xi => "xi",
            GridOp::XPlus => "x_plus",
            GridOp::XMinus => "x_minus",
            GridOp::Z => "z",
        }
    }

    pub fn all() -> [GridOp; 4] {
        [GridOp::Xi, GridOp::XPlus, GridOp::XMinus, GridOp::Z]
    }

    /// Exact operator lambda_nu of this element.
    pub fn lambda(&self, nu: &Rat, n: usize) -> LinDiffOp {
        match self {
            GridOp::Xi => lambda_op(&LieElement::xi(n), nu),
            GridOp::XPlus => lambda_op(&LieElement::x_plus(n), nu),
            GridOp::XMinus => lambda_op(&LieElement::x_minus(n), nu),
            GridOp::Z => euler_op(nu, n),
        }
    }

    /// Holomorphic-side action pi_nu of this element.
    pub fn pi(
        &self,
        nu: f64,
        f: Holomorphic,
        z: &DMatrix<Complex64>,
        h: f64,
    ) -> Result<(Complex64, bool)> {
        let n = z.nrows();
        match self {
            GridOp::Xi => pi_op(&LieElement::xi(n), nu, f, z, h),
            GridOp::XPlus => pi_op(&LieElement::x_plus(n), nu, f, z, h),
            GridOp::XMinus => pi_op(&LieElement::x_minus(n), nu, f, z, h),
            GridOp::Z => {
                let (m, wm) = pi_op(&LieElement::x_minus(n), nu, f, z, h)?;
                let (p, wp) = pi_op(&LieElement::x_plus(n), nu, f, z, h)?;
                Ok(((m - p) * 0.5, wm || wp))
            }
        }
    }
}

/// Relative residual of pi_nu(X)(L_nu f)(z) - L_nu(lambda_nu(X) f)(z).
/// The Laplace grid (interval length / box edge) is frozen at the base z so
/// that the finite differences inside pi_nu see a smooth function.
pub fn intertwine_check(
    op: &GridOp,
    f: &ExpPoly,
    z: &TubePoint,
    nu: &Rat,
    order: usize,
) -> Result<f64> {
    let n = f.n;
    if z.n() != n {
        return Err(HermlagError::Dimension("intertwine: rank mismatch".into()));
    }
    let nu_f = rat_to_f64(nu);
    let lam = match op {
        GridOp::Xi => lambda_op(&LieElement::xi(n), nu),
        GridOp::XPlus => lambda_op(&LieElement::x_plus(n), nu),
        GridOp::XMinus => lambda_op(&LieElement::x_minus(n), nu),
        GridOp::Z => euler_op(nu, n),
    };
    let g = lam.apply(f);
    let wmin = min_eig_hermitian_part(&(&z.z + DMatrix::<Complex64>::identity(n, n)))?;
    let p = f.p.compile();
    let deg = f.p.total_degree();
    // both sides share one quadrature grid so its bias largely cancels
    let (rhs, big_f): (Complex64, Box<dyn Fn(&DMatrix<Complex64>) -> Complex64>) = match n {
        1 => {
            let length = rank1_length(wmin, nu_f, deg.max(g.p.total_degree()));
            let gc = g.p.compile();
            let rhs = laplace_rank1(&gc, z.z[(0, 0)], nu_f, length).0;
            (
                rhs,
                Box::new(move |w: &DMatrix<Complex64>| {
                    laplace_rank1(&p, w[(0, 0)], nu_f, length).0
                }),
            )
        }
        2 => {
            let length = (40.0 / wmin).sqrt();
            let order = order + order / 2 + 4;
            let gc = g.p.compile();
            let rhs = laplace_rank2(&gc, &z.z, nu_f, length, order)?;
            (
                rhs,
                Box::new(move |w: &DMatrix<Complex64>| {
                    laplace_rank2(&p, w, nu_f, length, order).expect("fixed grid")
                }),
            )
        }
        _ => {
            return Err(HermlagError::Domain(
                "intertwine implemented for n <= 2".into(),
            ))
        }
    };
    let h = if n == 1 { 1e-3 } else { 1e-2 };
    let (lhs, _) = op.pi(nu_f, &*big_f, &z.z, h)?;
    // both sides can vanish identically (e.g. the annihilator on ell_0);
    // normalize by the transform magnitude as well to avoid 0/0
    let f_scale = big_f(&z.z).norm();
    let scale = lhs.norm().max(rhs.norm()).max(f_scale).max(1e-300);
    Ok((lhs - rhs).norm() / scale)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::Partition;
    use crate::laguerre::LagCtx;
    use crate::matrixcalc::GMat;
    use crate::rational::rat;
    use std::f64::consts::PI;

    fn lag_body(n: usize, nu: i64, parts: &[u32]) -> ExpPoly {
        let mut ctx = LagCtx::new(n, rat(nu));
        ctx.laguerre(&Partition::new(parts, n).unwrap()).unwrap().body
    }

    #[test]
    fn gauss_laguerre_moments_exact() {
        let alpha = 1.5;
        let rule = QuadratureRule::gauss_laguerre(8, alpha).unwrap();
        for k in 0..=15u32 {
            let got: f64 = rule
                .nodes
                .iter()
                .zip(&rule.weights)
                .map(|(x, w)| w * x.powi(k as i32))
                .sum();
            let want = gamma(alpha + 1.0 + k as f64);
            assert!((got - want).abs() / want < 1e-12, "k={k}");
        }
    }

    #[test]
    fn gauss_legendre_moments_exact() {
        let rule = QuadratureRule::gauss_legendre(6).unwrap();
        for k in 0..=11u32 {
            let got: f64 = rule
                .nodes
                .iter()
                .zip(&rule.weights)
                .map(|(x, w)| w * x.powi(k as i32))
                .sum();
            let want = if k % 2 == 0 { 2.0 / (k as f64 + 1.0) } else { 0.0 };
            assert!((got - want).abs() < 1e-13, "k={k}");
        }
    }

    #[test]
    fn raw_integral_and_k2() {
        // n=2, nu=4: raw = 2 Gamma(4) Gamma(3) = 24, so k_2 = pi/2
        let raw = raw_eigenvalue_integral(&|_| 1.0, 4.0, 2, 24).unwrap();
        assert!((raw - 24.0).abs() / 24.0 < 1e-12);
        for nu in [3.0, 4.0, 6.0] {
            let k = calibration_constant(nu, 2, 32).unwrap();
            assert!((k - PI / 2.0).abs() / (PI / 2.0) < 1e-10, "nu={nu}");
        }
    }

    #[test]
    fn invariant_integral_calibration_identity() {
        for (n, nu) in [(1usize, 3.0), (2, 4.0), (3, 6.0)] {
            let (v, warn) = invariant_integral(
                &|lam: &[f64]| (-lam.iter().sum::<f64>()).exp(),
                nu,
                n,
                16,
            )
            .unwrap();
            let want = gindikin_gamma(nu, n).unwrap();
            assert!((v - want).abs() / want < 1e-10, "n={n}");
            assert!(!warn);
        }
    }

    #[test]
    fn rank1_norms_match_classical() {
        // ||ell^FK_m||^2 = (m!)^2 Gamma(m+nu) / (2^nu m!) = m! Gamma(m+nu)/2^nu
        let nu = 4.0;
        for m in 0..=3u32 {
            let f = lag_body(1, 4, &[m]);
            let got = inner_product(&f, &f, nu, 1, 16).unwrap();
            let mut fact = 1.0;
            for k in 1..=m {
                fact *= k as f64;
            }
            let want = fact * gamma(m as f64 + nu) / 2f64.powf(nu);
            assert!((got - want).abs() / want < 1e-10, "m={m}");
        }
    }

    #[test]
    fn ground_state_norm_and_orthogonality() {
        // <ell_0, ell_0> = Gamma_Omega(nu) / 2^{n nu}; <ell_{(1,0)}, ell_0> = 0
        let nu = 4.0;
        let f0 = lag_body(2, 4, &[0, 0]);
        let f1 = lag_body(2, 4, &[1, 0]);
        let got = inner_product(&f0, &f0, nu, 2, 24).unwrap();
        let want = gindikin_gamma(nu, 2).unwrap() / 2f64.powf(8.0);
        assert!((got - want).abs() / want < 1e-10);
        let cross = inner_product(&f1, &f0, nu, 2, 24).unwrap();
        assert!(cross.abs() / want < 1e-8);
        // symmetry
        let cross2 = inner_product(&f0, &f1, nu, 2, 24).unwrap();
        assert!((cross - cross2).abs() / want.max(1.0) < 1e-12);
    }

    #[test]
    fn laplace_rank1_closed_forms() {
        // f = ell_0, z real or complex: Gamma(nu) (z+1)^{-nu}
        let nu = 3.0;
        let f = ExpPoly::ground(1);
        for z in [Complex64::new(2.0, 0.0), Complex64::new(2.0, 1.0)] {
            let zp = TubePoint::new(DMatrix::from_element(1, 1, z)).unwrap();
            let (got, warn) = laplace(&f, &zp, nu, 16).unwrap();
            let want = gamma(nu) * (z + 1.0).powf(-nu);
            assert!((got - want).norm() / want.norm() < 1e-10, "z={z}");
            assert!(!warn);
        }
    }

    #[test]
    fn laplace_linearity() {
        let nu = 3.5;
        let f = lag_body(1, 4, &[1]); // any body works; reuse nu=4 body
        let g = lag_body(1, 4, &[2]);
        let z = TubePoint::from_real(1.5).unwrap();
        let (vf, _) = laplace(&f, &z, nu, 16).unwrap();
        let (vg, _) = laplace(&g, &z, nu, 16).unwrap();
        let sum = f.add(&g.scale(&crate::rational::GaussRat::from_i64(3)));
        let (vs, _) = laplace(&sum, &z, nu, 16).unwrap();
        assert!((vs - (vf + vg * 3.0)).norm() / vs.norm() < 1e-9);
    }

    #[test]
    fn laplace_rank2_reproduces_gamma() {
        // z = I, f = ground: Gamma_Omega(nu) / 2^{2 nu}
        for nu in [3.0, 4.0, 6.0] {
            let f = ExpPoly::ground(2);
            let z = TubePoint::new(DMatrix::from_diagonal_element(2, 2, Complex64::new(1.0, 0.0)))
                .unwrap();
            let (got, _) = laplace(&f, &z, nu, 24).unwrap();
            let want = gindikin_gamma(nu, 2).unwrap() / 2f64.powf(2.0 * nu);
            assert!(
                (got.re - want).abs() / want < 1e-6 && got.im.abs() / want < 1e-6,
                "nu={nu}: got {got}, want {want}"
            );
        }
    }

    #[test]
    fn gamma_quadrature_cross_check() {
        // n=2, nu=4: 12 pi
        let got = gamma_quadrature(4.0, 2, 32).unwrap();
        let want = 12.0 * PI;
        assert!((got - want).abs() / want < 1e-4, "got {got}");
        // n=1, nu=3: Gamma(3) = 2
        let got1 = gamma_quadrature(3.0, 1, 16).unwrap();
        assert!((got1 - 2.0).abs() < 1e-10);
    }

    #[test]
    fn pi_op_closed_forms() {
        // X=Z, F = Gamma(nu)(z+1)^{-nu} at rank 1:
        // pi(Z) F = nu Gamma(nu) (z-1) (z+1)^{-nu-1}
        let nu = 3.0;
        let f = move |w: &DMatrix<Complex64>| {
            gamma(nu) * (w[(0, 0)] + 1.0).powf(-nu)
        };
        let z = DMatrix::from_element(1, 1, Complex64::new(2.0, 0.0));
        let (got, warn) = GridOp::Z.pi(nu, &f, &z, 1e-3).unwrap();
        let zc = z[(0, 0)];
        let want = nu * gamma(nu) * (zc - 1.0) * (zc + 1.0).powf(-nu - 1.0);
        assert!((got - want).norm() / want.norm() < 1e-9, "got {got} want {want}");
        assert!(!warn);

        // F constant, p^+ with x=I at rank 1: -nu (1+z) F
        let c = Complex64::new(0.7, -0.2);
        let fc = move |_: &DMatrix<Complex64>| c;
        let x = LieElement::p_plus(GMat::identity(1)).unwrap();
        let (got, _) = pi_op(&x, nu, &fc, &z, 1e-3).unwrap();
        let want = -nu * (zc + 1.0) * c;
        assert!((got - want).norm() / want.norm() < 1e-10);

        // k_C with b = 0: pure transport delta(za - az) F on F(z) = z_{01}
        let mut a = GMat::zeros(2);
        a.set(0, 0, crate::rational::GaussRat::one());
        a.set(1, 1, crate::rational::GaussRat::from_i64(-1));
        let kc = LieElement::kc(a.clone(), GMat::zeros(2)).unwrap();
        let f01 = |w: &DMatrix<Complex64>| w[(0, 1)];
        let mut z2 = DMatrix::<Complex64>::identity(2, 2) * Complex64::new(2.0, 0.0);
        z2[(0, 1)] = Complex64::new(0.4, 0.1);
        z2[(1, 0)] = Complex64::new(-0.3, 0.2);
        let (got, _) = pi_op(&kc, nu, &f01, &z2, 1e-3).unwrap();
        let ac = a.to_complex();
        let w = &z2 * &ac - &ac * &z2;
        let want = w[(0, 1)];
        assert!((got - want).norm() / want.norm().max(1.0) < 1e-9);
    }

    #[test]
    fn intertwine_rank1_ground_state() {
        // X=Z, f=ell_0, z=2: both sides nu Gamma(nu)(z-1)(z+1)^{-nu-1}
        let f = ExpPoly::ground(1);
        let z = TubePoint::from_real(2.0).unwrap();
        let r = intertwine_check(&GridOp::Z, &f, &z, &rat(3), 16).unwrap();
        assert!(r < 1e-8, "residual {r}");
    }
}
