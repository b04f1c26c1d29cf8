//! Laguerre functions on the cone and exact verification of their
//! differential recursion relations.
//!
//! ell^nu_m(s) = e^{-tr(s)} L^nu_m(2s) with the series
//! L^nu_m(x) = (nu)_m sum_{|k| <= |m|} binom(m,k) Phi_k(-x) / (nu)_k,
//! no factorial division: at rank 1 this is m! times the classical
//! e^{-t} L^{nu-1}_m(2t), a bridge that is tested, not assumed.

use num_traits::{One, Zero};
use std::collections::BTreeMap;

use crate::combinatorics::{enumerate_partitions, gen_binomial_row, pochhammer_cone, Partition};
use crate::error::{HermlagError, Result};
use crate::matrixcalc::{euler_op, lambda_op, ExpPoly, GMat, LieElement, LinDiffOp};
use crate::polyalgebra::{spherical_poly, MultiPoly};
use crate::rational::{rat, rat_frac, solve_exact, GaussRat, Rat};

/// One Laguerre function: body is the exact polynomial factor of
/// e^{-tr(s)} body(s). deg(body) = |m| and body(0) = (nu)_m.
#[derive(Clone, Debug)]
pub struct LaguerreFn {
    pub m: Partition,
    pub nu: Rat,
    pub n: usize,
    pub body: ExpPoly,
}

/// Which recursion a report verifies.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Relation {
    Eigen,
    Lower,
    Raise,
    Z,
}

impl std::fmt::Display for Relation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Relation::Eigen => "eigen",
            Relation::Lower => "lower",
            Relation::Raise => "raise",
            Relation::Z => "z",
        };
        write!(f, "{s}")
    }
}

/// Result of one exact recursion check: the residual ExpPoly (zero iff the
/// relation holds) and the coefficient table of the right-hand side.
#[derive(Clone, Debug)]
pub struct RecursionReport {
    pub relation: Relation,
    pub m: Partition,
    pub nu: Rat,
    pub n: usize,
    pub residual: ExpPoly,
    pub coefficients: Vec<(Partition, Rat)>,
}

impl RecursionReport {
    pub fn residual_zero(&self) -> bool {
        self.residual.is_zero()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let coeffs: Vec<serde_json::Value> = self
            .coefficients
            .iter()
            .map(|(p, c)| {
                serde_json::json!({
                    "partition": p.stripped(),
                    "coefficient": crate::rational::rat_to_string(c),
                })
            })
            .collect();
        serde_json::json!({
            "relation": self.relation.to_string(),
            "m": self.m.stripped(),
            "nu": crate::rational::rat_to_string(&self.nu),
            "n": self.n,
            "residual_zero": self.residual_zero(),
            "coefficients": coeffs,
        })
    }
}

/// Shared cache for one (n, nu): spherical polynomials, binomial rows,
/// operators, and constructed Laguerre functions.
pub struct LagCtx {
    pub n: usize,
    pub nu: Rat,
    spherical: BTreeMap<Partition, MultiPoly>,
    binom: BTreeMap<Partition, BTreeMap<Partition, Rat>>,
    laguerre: BTreeMap<Partition, LaguerreFn>,
    lower_op: Option<LinDiffOp>,
    raise_op: Option<LinDiffOp>,
    xi_op: Option<LinDiffOp>,
}

impl LagCtx {
    pub fn new(n: usize, nu: Rat) -> Self {
        LagCtx {
            n,
            nu,
            spherical: BTreeMap::new(),
            binom: BTreeMap::new(),
            laguerre: BTreeMap::new(),
            lower_op: None,
            raise_op: None,
            xi_op: None,
        }
    }

    pub fn spherical(&mut self, m: &Partition) -> Result<MultiPoly> {
        if let Some(p) = self.spherical.get(m) {
            return Ok(p.clone());
        }
        let p = spherical_poly(m, self.n)?;
        self.spherical.insert(m.clone(), p.clone());
        Ok(p)
    }

    pub fn binom_row(&mut self, m: &Partition) -> Result<BTreeMap<Partition, Rat>> {
        if let Some(r) = self.binom.get(m) {
            return Ok(r.clone());
        }
        let r = gen_binomial_row(m, self.n)?;
        self.binom.insert(m.clone(), r.clone());
        Ok(r)
    }

    /// lambda_nu(xi) = tr(-s nabla nabla - nu nabla + s).
    pub fn xi_op(&mut self) -> LinDiffOp {
        if self.xi_op.is_none() {
            self.xi_op = Some(lambda_op(&LieElement::xi(self.n), &self.nu));
        }
        self.xi_op.clone().unwrap()
    }

    /// Annihilation operator: (1/2) lambda_nu of the p^+ element with x = I,
    /// i.e. (1/2) tr(s nabla nabla + (nu + 2s) nabla + (nu + s)).
    pub fn lower_op(&mut self) -> LinDiffOp {
        if self.lower_op.is_none() {
            let x = LieElement::p_plus(GMat::identity(self.n)).unwrap();
            self.lower_op =
                Some(lambda_op(&x, &self.nu).scale(&GaussRat::new(rat_frac(1, 2), Rat::zero())));
        }
        self.lower_op.clone().unwrap()
    }

    /// Creation operator: (1/2) lambda_nu of the p^- element with x = I,
    /// i.e. (1/2) tr(-s nabla nabla + (-nu + 2s) nabla + (nu - s)).
    pub fn raise_op(&mut self) -> LinDiffOp {
        if self.raise_op.is_none() {
            let x = LieElement::p_minus(GMat::identity(self.n)).unwrap();
            self.raise_op =
                Some(lambda_op(&x, &self.nu).scale(&GaussRat::new(rat_frac(1, 2), Rat::zero())));
        }
        self.raise_op.clone().unwrap()
    }

    pub fn laguerre(&mut self, m: &Partition) -> Result<LaguerreFn> {
        if let Some(f) = self.laguerre.get(m) {
            return Ok(f.clone());
        }
        let f = laguerre_fn_uncached(self, m)?;
        self.laguerre.insert(m.clone(), f.clone());
        Ok(f)
    }
}

fn laguerre_fn_uncached(ctx: &mut LagCtx, m: &Partition) -> Result<LaguerreFn> {
    let n = ctx.n;
    let nu = ctx.nu.clone();
    let nu_m = pochhammer_cone(&nu, m);
    let row = ctx.binom_row(m)?;
    let mut body = MultiPoly::zero(n * n);
    for (k, b) in &row {
        if b.is_zero() {
            continue;
        }
        let nu_k = pochhammer_cone(&nu, k);
        if nu_k.is_zero() {
            return Err(HermlagError::Domain(format!(
                "Pochhammer pole: (nu)_k = 0 at nu={}, k={:?}",
                crate::rational::rat_to_string(&nu),
                k.stripped()
            )));
        }
        // term: (nu)_m binom(m,k) (-2)^{|k|} Phi_k / (nu)_k
        let mut c = &nu_m * b / nu_k;
        let d = k.weight();
        c *= rat(-2).pow(d as i32);
        let phi = ctx.spherical(k)?;
        body = body.add(&phi.scale_rat(&c));
    }
    Ok(LaguerreFn {
        m: m.clone(),
        nu,
        n,
        body: ExpPoly::new(n, body)?,
    })
}

/// Construct ell^nu_m. Errors on Pochhammer zero divisors.
pub fn laguerre_fn(m: &Partition, nu: &Rat, n: usize) -> Result<LaguerreFn> {
    LagCtx::new(n, nu.clone()).laguerre(m)
}

/// Expand a homogeneous L-invariant polynomial of degree d in the spherical
/// basis {Phi_k : |k| = d}. Errors when the polynomial is outside the span.
fn expand_in_spherical(
    ctx: &mut LagCtx,
    p: &MultiPoly,
    d: u32,
) -> Result<BTreeMap<Partition, GaussRat>> {
    let n = ctx.n;
    let parts: Vec<Partition> = enumerate_partitions(n, d)
        .into_iter()
        .filter(|k| k.weight() == d)
        .collect();
    let basis: Vec<MultiPoly> = parts
        .iter()
        .map(|k| ctx.spherical(k))
        .collect::<Result<_>>()?;

    // union of monomial supports
    let mut monos: std::collections::BTreeSet<Vec<u32>> = p.terms().map(|(e, _)| e.clone()).collect();
    for b in &basis {
        for (e, _) in b.terms() {
            monos.insert(e.clone());
        }
    }
    let monos: Vec<Vec<u32>> = monos.into_iter().collect();
    let a: Vec<Vec<GaussRat>> = monos
        .iter()
        .map(|e| basis.iter().map(|b| b.coeff(e)).collect())
        .collect();
    let rhs: Vec<GaussRat> = monos.iter().map(|e| p.coeff(e)).collect();
    let sol = solve_exact(&a, &rhs)?;
    Ok(parts
        .into_iter()
        .zip(sol)
        .filter(|(_, c)| !c.is_zero())
        .collect())
}

/// Exact expansion of an ExpPoly in the Laguerre basis: f = sum c_m ell_m.
/// Triangular by degree because the leading part of ell_m is (-2)^{|m|} Phi_m.
pub fn laguerre_expand(ctx: &mut LagCtx, f: &ExpPoly) -> Result<BTreeMap<Partition, GaussRat>> {
    if f.n != ctx.n {
        return Err(HermlagError::Dimension("laguerre_expand: rank mismatch".into()));
    }
    let mut out: BTreeMap<Partition, GaussRat> = BTreeMap::new();
    let mut rem = f.p.clone();
    let mut d = rem.total_degree();
    loop {
        let top = rem.homogeneous_part(d);
        if !top.is_zero() {
            let sph = expand_in_spherical(ctx, &top, d)?;
            let lead = GaussRat::from_rat(rat(-2).pow(d as i32));
            for (k, c) in sph {
                let ck = &c / &lead;
                let lf = ctx.laguerre(&k)?;
                rem = rem.sub(&lf.body.p.scale(&ck));
                if !ck.is_zero() {
                    out.insert(k, ck);
                }
            }
        }
        if d == 0 {
            break;
        }
        d -= 1;
    }
    if !rem.is_zero() {
        return Err(HermlagError::Solve(
            "laguerre_expand: nonzero remainder".into(),
        ));
    }
    Ok(out)
}

/// Theorem relation 1: lambda(xi) ell_m = (n nu + 2|m|) ell_m, exactly.
pub fn verify_eigen(ctx: &mut LagCtx, m: &Partition) -> Result<RecursionReport> {
    let lf = ctx.laguerre(m)?;
    let op = ctx.xi_op();
    let lhs = op.apply(&lf.body);
    let eig = &ctx.nu * rat(ctx.n as i64) + rat(2 * m.weight() as i64);
    let rhs = lf.body.scale_rat(&eig);
    Ok(RecursionReport {
        relation: Relation::Eigen,
        m: m.clone(),
        nu: ctx.nu.clone(),
        n: ctx.n,
        residual: lhs.sub(&rhs),
        coefficients: vec![(m.clone(), eig)],
    })
}

/// The stated lowering coefficient for the shift m -> m - gamma_j:
/// -binom(m, m-gamma_j) (m_j - 1 + nu - (j-1)), with j 1-based.
fn lowering_coeff(ctx: &mut LagCtx, m: &Partition, j: usize, mj: u32) -> Result<Rat> {
    let down = m.shift(j, -1).expect("caller checked shift validity");
    let b = ctx
        .binom_row(m)?
        .get(&down)
        .cloned()
        .unwrap_or_else(Rat::zero);
    let factor = rat(mj as i64 - 1) + &ctx.nu - rat(j as i64 - 1);
    Ok(-(b * factor))
}

/// Theorem relation 2: the annihilation operator sends ell_m to
/// -sum_j binom(m, m-gamma_j)(m_j - 1 + nu - (j-1)) ell_{m-gamma_j}, exactly.
pub fn verify_lowering(ctx: &mut LagCtx, m: &Partition) -> Result<RecursionReport> {
    let lf = ctx.laguerre(m)?;
    let op = ctx.lower_op();
    let lhs = op.apply(&lf.body);
    let mut rhs = ExpPoly::zero(ctx.n);
    let mut coeffs = Vec::new();
    for j in 1..=ctx.n {
        let Some(down) = m.shift(j, -1) else { continue };
        let c = lowering_coeff(ctx, m, j, m.parts()[j - 1])?;
        let lg = ctx.laguerre(&down)?;
        rhs = rhs.add(&lg.body.scale_rat(&c));
        coeffs.push((down, c));
    }
    Ok(RecursionReport {
        relation: Relation::Lower,
        m: m.clone(),
        nu: ctx.nu.clone(),
        n: ctx.n,
        residual: lhs.sub(&rhs),
        coefficients: coeffs,
    })
}

/// Theorem relation 3: the creation operator sends ell_m into
/// span{ell_{m+gamma_j}}. The constants c_m(j) are extracted by exact
/// expansion in the Laguerre basis; any component outside the span shows up
/// in the residual (and as a Solve error if the expansion itself fails).
pub fn extract_raising(ctx: &mut LagCtx, m: &Partition) -> Result<RecursionReport> {
    let lf = ctx.laguerre(m)?;
    let op = ctx.raise_op();
    let lhs = op.apply(&lf.body);
    let expansion = laguerre_expand(ctx, &lhs)?;

    let allowed: Vec<Partition> = (1..=ctx.n).filter_map(|j| m.shift(j, 1)).collect();
    let mut rhs = ExpPoly::zero(ctx.n);
    let mut coeffs = Vec::new();
    for k in &allowed {
        let c = expansion.get(k).cloned().unwrap_or_else(GaussRat::zero);
        if !c.is_real() {
            return Err(HermlagError::Solve("complex raising constant".into()));
        }
        let lg = ctx.laguerre(k)?;
        rhs = rhs.add(&lg.body.scale(&c));
        coeffs.push((k.clone(), c.re));
    }
    Ok(RecursionReport {
        relation: Relation::Raise,
        m: m.clone(),
        nu: ctx.nu.clone(),
        n: ctx.n,
        residual: lhs.sub(&rhs),
        coefficients: coeffs,
    })
}

/// Z-decomposition: E_nu ell_m (with E_nu = nu n + 2 tr(s nabla)) equals the
/// lowering combination plus the raising combination, exactly. Also checks
/// the grading: the annihilator output lives at weight |m|-1 and the creator
/// output at weight |m|+1.
pub fn verify_z(ctx: &mut LagCtx, m: &Partition) -> Result<RecursionReport> {
    let lf = ctx.laguerre(m)?;
    let e_op = euler_op(&ctx.nu, ctx.n);
    let lhs = e_op.apply(&lf.body);

    let low = verify_lowering(ctx, m)?;
    let high = extract_raising(ctx, m)?;

    // grading bookkeeping
    let low_out = ctx.lower_op().apply(&lf.body);
    for (k, _) in laguerre_expand(ctx, &low_out)? {
        if k.weight() + 1 != m.weight() {
            return Err(HermlagError::Solve(format!(
                "annihilator output off-grade: |k|={} for |m|={}",
                k.weight(),
                m.weight()
            )));
        }
    }
    let high_out = ctx.raise_op().apply(&lf.body);
    for (k, _) in laguerre_expand(ctx, &high_out)? {
        if k.weight() != m.weight() + 1 {
            return Err(HermlagError::Solve(format!(
                "creator output off-grade: |k|={} for |m|={}",
                k.weight(),
                m.weight()
            )));
        }
    }

    let mut rhs = ExpPoly::zero(ctx.n);
    let mut coeffs = Vec::new();
    for (k, c) in low.coefficients.iter().chain(high.coefficients.iter()) {
        let lg = ctx.laguerre(k)?;
        rhs = rhs.add(&lg.body.scale_rat(c));
        coeffs.push((k.clone(), c.clone()));
    }
    Ok(RecursionReport {
        relation: Relation::Z,
        m: m.clone(),
        nu: ctx.nu.clone(),
        n: ctx.n,
        residual: lhs.sub(&rhs),
        coefficients: coeffs,
    })
}

/// Body polynomial of the classical rank-1 Laguerre function
/// e^{-t} L^{alpha}_m(2t), used as an independent oracle:
/// L^alpha_m(x) = sum_i (-1)^i binom(m+alpha, m-i) x^i / i!.
pub fn classical_laguerre_body(m: u32, alpha: &Rat) -> MultiPoly {
    let mut p = MultiPoly::zero(1);
    for i in 0..=m {
        // binom(m+alpha, m-i) = prod_{k=i+1..m} (alpha+k) / (m-i)!
        let mut b = Rat::one();
        for k in (i + 1)..=m {
            b *= alpha + rat(k as i64);
        }
        let mut fact = Rat::one();
        for k in 1..=(m - i) {
            fact *= rat(k as i64);
        }
        b /= fact;
        // coefficient of t^i in L(2t): (-1)^i binom * 2^i / i!
        let mut c = b * rat(2).pow(i as i32);
        if i % 2 == 1 {
            c = -c;
        }
        let mut ifact = Rat::one();
        for k in 1..=i {
            ifact *= rat(k as i64);
        }
        c /= ifact;
        p.add_term_mut(vec![i], GaussRat::from_rat(c));
    }
    p
}
