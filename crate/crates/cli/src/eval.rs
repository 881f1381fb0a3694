use std::path::PathBuf;

use clap::{Args, ValueEnum};
use num_complex::Complex64;
use quatmod::doubling::DoublingContext;
use quatmod::eis::{self, EisensteinParams};
use quatmod::groups::{
    coset_rep, is_group_element, random_exact_element, ExactWordKind, GroupElement, GroupFixture, SkewHermitianForm,
};
use quatmod::lfun::{self, DirichletCharacter, EulerFactorVariant, SatakeData};
use quatmod::qalg::{mat_from_json, mat_to_json, MatQuatJson, QuatAlgebra};
use quatmod::symspace::{matc_from_rows, matc_to_rows, DomainPoint};
use quatmod::tol::Tolerances;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::de::DeserializeOwned;
use serde_json::{json, Value};

use crate::CliError;

pub fn parse_complex(s: &str) -> Result<Complex64, String> {
    s.trim().parse::<Complex64>().map_err(|_| format!("not a complex number: {s:?}"))
}

fn read_json<T: DeserializeOwned>(path: &PathBuf) -> Result<T, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

fn cjson(z: Complex64) -> Value {
    json!([z.re, z.im])
}

#[derive(Args, Debug)]
pub struct AlgebraArgs {
    /// zeta^2 = alpha
    #[arg(long, default_value_t = -3, allow_hyphen_values = true)]
    alpha: i64,
    /// xi^2 = beta
    #[arg(long, default_value_t = -7, allow_hyphen_values = true)]
    beta: i64,
}

impl AlgebraArgs {
    fn algebra(&self) -> Result<QuatAlgebra, CliError> {
        Ok(QuatAlgebra::new(self.alpha, self.beta)?)
    }
}

#[derive(Args, Debug)]
pub struct CharacterArgs {
    #[arg(long, default_value_t = 1)]
    chi_modulus: u64,
    /// Values chi(0), ..., chi(N-1) as comma-separated integers; trivial if omitted.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    chi_table: Vec<i64>,
}

impl CharacterArgs {
    fn character(&self) -> Result<DirichletCharacter, CliError> {
        if self.chi_table.is_empty() {
            Ok(DirichletCharacter::trivial(self.chi_modulus))
        } else {
            Ok(DirichletCharacter::from_int_table(self.chi_modulus, &self.chi_table)?)
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Variant {
    AsPrinted,
    SDependent,
}

#[derive(Args, Debug)]
pub struct LvalueArgs {
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    s: Complex64,
    #[command(flatten)]
    chi: CharacterArgs,
    #[arg(long, default_value_t = 100_000)]
    pmax: u64,
    /// Primes whose Euler factors are removed (Dirichlet L only).
    #[arg(long, value_delimiter = ',')]
    exclude: Vec<u64>,
    /// Satake parameter fixture; switches to the standard L-function.
    #[arg(long)]
    fixture: Option<PathBuf>,
    /// Standard L-function with trivial Satake parameters for this n.
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, default_value_t = 0)]
    k: i64,
    #[arg(long, default_value_t = 1)]
    level: u64,
    #[arg(long, value_enum, default_value_t = Variant::AsPrinted)]
    variant: Variant,
}

pub fn lvalue(a: &LvalueArgs) -> Result<Value, CliError> {
    let chi = a.chi.character()?;
    let satake = match (&a.fixture, a.n) {
        (Some(p), _) => Some(SatakeData::from_json(
            &std::fs::read_to_string(p).map_err(|e| CliError::Usage(format!("{}: {e}", p.display())))?,
        )?),
        (None, Some(n)) => Some(SatakeData::trivial(n, a.k, a.level, a.pmax)),
        (None, None) => None,
    };
    let Some(satake) = satake else {
        let r = lfun::dirichlet_l_partial(a.s, &chi, &a.exclude, a.pmax)?;
        return Ok(json!({
            "command": "lvalue",
            "value": cjson(r.value),
            "flags": { "character_conductor": chi.conductor(), "excluded": a.exclude },
            "provenance": "L(s, chi) = prod_{p <= pmax, p not excluded} (1 - chi(p) p^{-s})^{-1}",
            "tolerance": { "pmax": a.pmax, "tail_estimate": r.tail },
        }));
    };
    let variant = match a.variant {
        Variant::AsPrinted => EulerFactorVariant::AsPrinted,
        Variant::SDependent => EulerFactorVariant::SDependent,
    };
    let r = lfun::l_function(a.s, &satake, &chi, a.pmax, variant)?;
    Ok(json!({
        "command": "lvalue",
        "value": cjson(r.l.value),
        "lambda_n": cjson(r.lambda),
        "d_series": cjson(r.d_series),
        "flags": { "variant": r.variant, "n": satake.n, "level": satake.level },
        "provenance": "L(s, f, chi) = prod_{p <= pmax, p not dividing the level} of (1 - p^{e} chi^2(p))^{-1} \
                       prod_i ((1 - alpha_i chi(p) p^{n-1-s})(1 - alpha_i^{-1} chi(p) p^{n-1-s}))^{-1}, \
                       e = 2n-2 (as printed) or 2n-2-2s (s-dependent); D = L / Lambda_n",
        "tolerance": { "pmax": a.pmax, "tail_estimate": r.l.tail },
    }))
}

#[derive(Args, Debug)]
pub struct GammaArgs {
    #[arg(long)]
    m: usize,
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    s: Complex64,
}

pub fn gamma(a: &GammaArgs) -> Result<Value, CliError> {
    let v = lfun::gamma_m(a.m, a.s)?;
    Ok(json!({
        "command": "gamma",
        "value": cjson(v),
        "flags": {},
        "provenance": "Gamma_m(s) = pi^{m(m-1)} prod_{i=0}^{m-1} Gamma(s - 2i)",
        "tolerance": { "method": "Lanczos g = 7 with reflection", "relative": 1e-13 },
    }))
}

#[derive(Args, Debug)]
pub struct CkArgs {
    #[arg(long)]
    n: usize,
    #[arg(long, allow_hyphen_values = true)]
    k: i64,
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    s: Complex64,
}

pub fn ck(a: &CkArgs) -> Result<Value, CliError> {
    let r = lfun::reproducing_constant(a.n, a.k, a.s)?;
    let hua = lfun::hua_constant(a.n, (a.s + a.k as f64) / 2.0 - a.n as f64 + 1.0)?;
    Ok(json!({
        "command": "ck",
        "value": cjson(r.value),
        "hua_form": cjson(hua),
        "flags": { "modulo_algebraic_constant": r.modulo_algebraic_constant },
        "provenance": "c_k(s) = pi^{n(n-1)/2} prod_{j=0}^{n-2} Gamma(s+k-2n+3+2j) / Gamma(s+k-n+2+j), algebraic factor set to 1",
        "tolerance": { "relative_agreement_with_hua_form": (r.value - hua).norm() / hua.norm() },
    }))
}

#[derive(Args, Debug)]
pub struct ExponentArgs {
    #[arg(long)]
    n: i64,
    #[arg(long, allow_hyphen_values = true)]
    k: i64,
    #[arg(long, allow_hyphen_values = true)]
    mu: i64,
}

pub fn exponent(a: &ExponentArgs) -> Result<Value, CliError> {
    let e = lfun::algebraicity_exponent(a.n, a.k, a.mu)?;
    let (alpha, beta) = lfun::nearly_holo_exponent(a.n, a.k, a.mu)?;
    Ok(json!({
        "command": "exponent",
        "value": { "algebraicity": e.to_string(), "alpha": alpha, "beta": beta },
        "flags": { "eisenstein_m": a.n, "eisenstein_l": a.k },
        "provenance": "A = n(k+mu) - 3n(n-1)/2 under 2n-1 < mu <= k; \
                       (alpha, beta) = (m(l-mu), m(l+mu) - m(m-1)) for the Eisenstein series on G_{2m} with m = n, l = k",
        "tolerance": { "exact": true },
    }))
}

#[derive(Args, Debug)]
pub struct PfaffianArgs {
    /// JSON file (or inline JSON) with rows of [re, im] entries.
    #[arg(long)]
    matrix: String,
}

pub fn pfaffian(a: &PfaffianArgs) -> Result<Value, CliError> {
    let rows: Vec<Vec<[f64; 2]>> = if a.matrix.trim_start().starts_with('[') {
        serde_json::from_str(&a.matrix).map_err(|e| CliError::Usage(e.to_string()))?
    } else {
        read_json(&PathBuf::from(&a.matrix))?
    };
    let m = matc_from_rows(&rows)?;
    let pf = lfun::pfaffian(&m)?;
    let det = m.determinant();
    let mut out = json!({
        "command": "pfaffian",
        "value": cjson(pf),
        "flags": { "size": m.nrows() },
        "provenance": "Parlett-Reid elimination with pivoting; pf(A)^2 = det(A)",
        "tolerance": { "pf_squared_minus_det": (pf * pf - det).norm() },
    });
    if m.nrows() <= 10 {
        let ex = lfun::pfaffian_expansion(&m)?;
        out["tolerance"]["expansion_difference"] = json!((pf - ex).norm());
    }
    Ok(out)
}

#[derive(Args, Debug)]
pub struct IotaArgs {
    #[arg(long)]
    m: usize,
    #[arg(long, default_value_t = 0)]
    r: usize,
    /// Point files (DomainPoint JSON); the origin if omitted.
    #[arg(long)]
    z1: Option<PathBuf>,
    #[arg(long)]
    z2: Option<PathBuf>,
    /// Draw z1, z2 at random from this seed instead.
    #[arg(long)]
    seed: Option<u64>,
    #[command(flatten)]
    alg: AlgebraArgs,
}

pub fn embed_iota(a: &IotaArgs, tol: &Tolerances) -> Result<Value, CliError> {
    let ctx = DoublingContext::new(a.m, a.r, a.alg.algebra()?)?;
    let src = ctx.source();
    let point = |p: &Option<PathBuf>, rng: &mut Option<ChaCha8Rng>| -> Result<_, CliError> {
        if let Some(p) = p {
            let d: DomainPoint = read_json(p)?;
            return Ok(d.matrix()?);
        }
        match rng {
            Some(rng) => Ok(src.random_point(rng, 0.4)?),
            None => Ok(src.origin().clone()),
        }
    };
    let mut rng = a.seed.map(ChaCha8Rng::seed_from_u64);
    let z1 = point(&a.z1, &mut rng)?;
    let z2 = point(&a.z2, &mut rng)?;
    if !src.contains(&z1, tol)? || !src.contains(&z2, tol)? {
        return Err(quatmod::Error::NotInDomain("z1 or z2 is outside the source domain".into()).into());
    }
    let w = ctx.iota(&z1, &z2)?;
    Ok(json!({
        "command": "embed-iota",
        "value": matc_to_rows(&w),
        "inputs": { "z1": matc_to_rows(&z1), "z2": matc_to_rows(&z2) },
        "flags": { "in_target": ctx.target().contains(&w, tol)?, "normalized": true },
        "provenance": "iota(z1, z2) = A B^{-1} for (A; B) = R~^{-1} diag(U(z1), conj U(z2)) with normalized R~",
        "tolerance": tol,
    }))
}

#[derive(Args, Debug)]
pub struct RhoArgs {
    #[arg(long)]
    m: usize,
    #[arg(long, default_value_t = 0)]
    r: usize,
    /// Group element fixtures; the identity if omitted.
    #[arg(long)]
    g1: Option<PathBuf>,
    #[arg(long)]
    g2: Option<PathBuf>,
    /// Draw g1, g2 as random integral words from this seed instead.
    #[arg(long)]
    seed: Option<u64>,
    #[command(flatten)]
    alg: AlgebraArgs,
}

pub fn embed_rho(a: &RhoArgs) -> Result<Value, CliError> {
    let alg = a.alg.algebra()?;
    let ctx = DoublingContext::new(a.m, a.r, alg)?;
    let form = SkewHermitianForm::standard(a.m, a.r, alg);
    let mut rng = a.seed.map(ChaCha8Rng::seed_from_u64);
    let mut elem = |p: &Option<PathBuf>| -> Result<GroupElement, CliError> {
        if let Some(p) = p {
            let f: GroupFixture = read_json(p)?;
            return Ok(f.to_element()?);
        }
        match rng.as_mut() {
            Some(rng) => Ok(random_exact_element(rng, a.m, a.r, alg, 4, ExactWordKind::Integral)?),
            None => Ok(GroupElement::identity(&form)),
        }
    };
    let g1 = elem(&a.g1)?;
    let g2 = elem(&a.g2)?;
    let rho = ctx.rho(&g1, &g2)?;
    let member = is_group_element(rho.mat(), &SkewHermitianForm::split(ctx.n(), alg))?;
    Ok(json!({
        "command": "embed-rho",
        "value": mat_to_json(rho.mat()),
        "inputs": { "g1": mat_to_json(g1.mat()), "g2": mat_to_json(g2.mat()) },
        "flags": { "member_of_split_group": member },
        "provenance": "rho(g1, g2) = R^{-1} diag(g1, g2) R, exact",
        "tolerance": { "exact": true },
    }))
}

#[derive(Args, Debug)]
pub struct CosetArgs {
    #[arg(long)]
    t: usize,
    #[arg(long)]
    m: usize,
    #[arg(long, default_value_t = 0)]
    r: usize,
    #[command(flatten)]
    alg: AlgebraArgs,
}

pub fn coset(a: &CosetArgs) -> Result<Value, CliError> {
    let alg = a.alg.algebra()?;
    let tau = coset_rep(a.t, a.m, a.r, alg)?;
    let member = is_group_element(tau.mat(), &SkewHermitianForm::split(2 * a.m + a.r, alg))?;
    Ok(json!({
        "command": "coset",
        "value": mat_to_json(tau.mat()),
        "flags": { "member_of_split_group": member },
        "provenance": "tau_t = identity with e_t in block (4,3) and e_t* in block (6,1) of the (m,r,m,m,r,m) partition",
        "tolerance": { "exact": true },
    }))
}

#[derive(Args, Debug)]
pub struct FourierArgs {
    /// Index h as a quaternion matrix fixture.
    #[arg(long)]
    h: PathBuf,
    /// Optional substitution matrix q.
    #[arg(long)]
    q: Option<PathBuf>,
    #[arg(long)]
    l: i64,
    #[command(flatten)]
    chi: CharacterArgs,
    #[arg(long, default_value_t = 1)]
    level: u64,
    /// Also evaluate alpha_n(h, s, chi) at this s.
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    alpha_s: Option<Complex64>,
    #[arg(long, default_value_t = 20_000)]
    pmax: u64,
    #[arg(long)]
    assume_local_trivial: bool,
}

pub fn fourier(a: &FourierArgs, tol: &Tolerances) -> Result<Value, CliError> {
    let h = mat_from_json(&read_json::<MatQuatJson>(&a.h)?)?;
    let qm = match &a.q {
        Some(p) => Some(mat_from_json(&read_json::<MatQuatJson>(p)?)?),
        None => None,
    };
    let params = EisensteinParams { m: h.rows(), l: a.l, chi: a.chi.character()?, level: a.level };
    let c = eis::coefficient_special_point(&h, qm.as_ref(), &params, tol.pos)?;
    let inr = eis::inertia(&h)?;
    let mut out = json!({
        "command": "fourier",
        "value": cjson(c.value),
        "flags": c.flags,
        "positivity": inr.class(),
        "rank": inr.rank(),
        "provenance": "c(h, q) = chi(Nrd q)^{-1} |Nrd q|^{l+1-2m} exp(-2 pi lambda(q* h q)) for h > 0, else 0",
        "tolerance": { "positivity_margin": tol.pos },
    });
    if let Some(s) = a.alpha_s {
        let r = eis::alpha_ratio(&h, s, &params.chi, a.level, a.pmax, a.assume_local_trivial)?;
        out["alpha_ratio"] = json!({ "s": cjson(s), "value": cjson(r.value), "flags": r.flags, "pmax": a.pmax });
    }
    Ok(out)
}

#[derive(Args, Debug)]
pub struct FourierSumArgs {
    /// Real part sigma as a quaternion matrix fixture.
    #[arg(long)]
    sigma: PathBuf,
    /// Imaginary part y as rows of [re, im] entries of its 2m x 2m complex image.
    #[arg(long)]
    y: PathBuf,
    #[arg(long)]
    l: i64,
    #[command(flatten)]
    chi: CharacterArgs,
    #[arg(long, default_value_t = 1)]
    level: u64,
    /// Enumerate h with lambda(h) <= bound.
    #[arg(long)]
    bound: i64,
    #[arg(long, default_value_t = 200_000)]
    cap: usize,
}

pub fn fourier_sum(a: &FourierSumArgs, tol: &Tolerances) -> Result<Value, CliError> {
    let sigma = mat_from_json(&read_json::<MatQuatJson>(&a.sigma)?)?;
    let y = matc_from_rows(&read_json::<Vec<Vec<[f64; 2]>>>(&a.y)?)?;
    let params = EisensteinParams { m: sigma.rows(), l: a.l, chi: a.chi.character()?, level: a.level };
    let r = eis::partial_fourier_sum(&sigma, &y, &params, a.bound, a.cap, tol.pos)?;
    Ok(json!({
        "command": "fourier-sum",
        "value": cjson(r.value),
        "flags": r.flags,
        "provenance": "sum over h > 0 in the order Z<1, zeta, xi, zeta xi> with lambda(h) <= bound of \
                       exp(-2 pi lambda(h y)) prod_p e_p(lambda(h sigma))",
        "tolerance": { "bound": a.bound, "cap": a.cap },
    }))
}
