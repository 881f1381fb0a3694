use std::f64::consts::PI;

use num_complex::Complex64;
use quatmod::doubling::{r_identity_holds, DoublingContext};
use quatmod::eis::{self, EisensteinParams};
use quatmod::groups::{
    conjugate_by_tau_m, coset_rep, is_group_element, k1_member, random_exact_element, CongruenceLevel, ExactWordKind,
    SkewHermitianForm,
};
use quatmod::lfun::{self, DirichletCharacter};
use quatmod::linalg::{block_diag, eye, hermitian_eigenvalues, max_abs, I};
use quatmod::qalg::{
    diag_quat, mat_split_embed, q, q_to_f64, qf, random_integral_mat, random_integral_quat, real_embed, reduced_det,
    reduced_trace, split_embed, transport_identities, Mat, MatC, MatQuat, QuatAlgebra,
};
use quatmod::symspace::{cayley, cayley_inverse, Realization, RealizationTag};
use quatmod::tol::Tolerances;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::report::Check;

pub const SUITES: [&str; 6] = ["qalg", "groups", "symspace", "doubling", "lfun", "eis"];

#[derive(Clone, Copy)]
pub struct Ctx {
    pub alg: QuatAlgebra,
    pub tol: f64,
    pub tolerances: Tolerances,
    pub pmax: u64,
}

pub fn checks(suite: &str, ctx: &Ctx) -> Vec<Check> {
    match suite {
        "qalg" => qalg(ctx),
        "groups" => groups(ctx),
        "symspace" => symspace(ctx),
        "doubling" => doubling(ctx),
        "lfun" => lfun(ctx),
        "eis" => eis(ctx),
        _ => vec![],
    }
}

fn rel(a: &MatC, b: &MatC) -> f64 {
    max_abs(&(a - b)) / (1.0 + max_abs(b))
}

fn invertible(rng: &mut ChaCha8Rng, alg: QuatAlgebra, m: usize) -> MatQuat {
    loop {
        let g = random_integral_mat(rng, alg, m, 3);
        if reduced_det(&g).map(|d| d != q(0)).unwrap_or(false) {
            return g;
        }
    }
}

/// g* diag(signs) g for a random integral invertible g.
fn congruent(rng: &mut ChaCha8Rng, alg: QuatAlgebra, signs: &[i64]) -> quatmod::Result<MatQuat> {
    let g = invertible(rng, alg, signs.len());
    let d = diag_quat(&signs.iter().map(|&s| alg.scalar(q(s))).collect::<Vec<_>>());
    Mat::product(&[&g.star(), &d, &g])
}

fn qalg(ctx: &Ctx) -> Vec<Check> {
    let a = ctx.alg;
    let tol = ctx.tol;
    vec![
        Check::exact("conjugation transport", 100, &["star", "transpose"], move |rng| {
            let n = rng.random_range(1..=4);
            let (s, t) = transport_identities(&random_integral_mat(rng, a, n, 6))?;
            Ok(vec![s, t])
        }),
        Check::exact("split embedding is multiplicative", 100, &["quaternion", "matrix"], move |rng| {
            let x = random_integral_quat(rng, a, 20);
            let y = random_integral_quat(rng, a, 20);
            let one = split_embed(&(&x * &y)) == split_embed(&x).try_mul(&split_embed(&y))?;
            let n = rng.random_range(1..=3);
            let xm = random_integral_mat(rng, a, n, 4);
            let ym = random_integral_mat(rng, a, n, 4);
            let two = mat_split_embed(&xm.try_mul(&ym)?)? == mat_split_embed(&xm)?.try_mul(&mat_split_embed(&ym)?)?;
            Ok(vec![one, two])
        }),
        Check::exact("reduced determinant is multiplicative", 50, &["det"], move |rng| {
            let n = rng.random_range(1..=3);
            let x = random_integral_mat(rng, a, n, 5);
            let y = random_integral_mat(rng, a, n, 5);
            Ok(vec![reduced_det(&x.try_mul(&y)?)? == reduced_det(&x)? * reduced_det(&y)?])
        }),
        Check::new("numeric embedding is multiplicative", 100, tol, &["relative"], move |rng| {
            let n = rng.random_range(1..=4);
            let x = random_integral_mat(rng, a, n, 6);
            let y = random_integral_mat(rng, a, n, 6);
            let prod = real_embed(&x) * real_embed(&y);
            Ok(vec![rel(&real_embed(&x.try_mul(&y)?), &prod)])
        }),
    ]
}

fn groups(ctx: &Ctx) -> Vec<Check> {
    let a = ctx.alg;
    let shapes = [(1, 0), (2, 0), (1, 1), (1, 2), (2, 1)];
    let mut out = vec![
        Check::exact("coset representatives preserve the split form", 1, &["tau_t"], move |_| {
            let mut ok = true;
            for (m, r) in shapes {
                let split = SkewHermitianForm::split(2 * m + r, a);
                for t in 0..=m {
                    ok &= is_group_element(coset_rep(t, m, r, a)?.mat(), &split)?;
                }
            }
            Ok(vec![ok])
        }),
        Check::exact("random words are integral group elements", 40, &["member", "inverse"], move |rng| {
            let (m, r) = shapes[rng.random_range(0..shapes.len())];
            let g = random_exact_element(rng, m, r, a, 5, ExactWordKind::Integral)?;
            let member = g.is_integral() && is_group_element(g.mat(), g.form())?;
            let inv = g.mul(&g.inverse()?)?.mat().is_identity();
            Ok(vec![member, inv])
        }),
    ];
    for level in [5u64, 7] {
        out.push(Check::exact(format!("congruence words lie in K1(N), N = {level}"), 20, &["k1"], move |rng| {
            let lv = CongruenceLevel::new(level)?;
            let g = random_exact_element(rng, 1, 1, a, 5, ExactWordKind::Congruence(level))?;
            Ok(vec![k1_member(&g, &lv)?])
        }));
    }
    out.push(Check::exact("tau~_m conjugation, expanded product, (m,r) = (1,1)", 30, &["bottom_rows"], move |rng| {
        let ctx = DoublingContext::new(1, 1, a)?;
        let xi = random_exact_element(rng, 1, 1, a, 5, ExactWordKind::Integral)?;
        Ok(vec![conjugate_by_tau_m(&xi, &ctx)?.matches_derived()])
    }));
    out.push(
        Check::exact("tau~_m conjugation, stated block pattern, (m,r) = (1,1)", 30, &["bottom_rows"], move |rng| {
            let ctx = DoublingContext::new(1, 1, a)?;
            let xi = random_exact_element(rng, 1, 1, a, 5, ExactWordKind::Integral)?;
            Ok(vec![conjugate_by_tau_m(&xi, &ctx)?.matches()])
        })
        .informational(),
    );
    out
}

fn realizations() -> Vec<Realization> {
    vec![
        Realization::z(1, 0),
        Realization::z(1, 1),
        Realization::z(2, 1),
        Realization::h(2),
        Realization::h(3),
        Realization::b(2),
        Realization::b(3),
    ]
}

fn symspace(ctx: &Ctx) -> Vec<Check> {
    let (tol, t) = (ctx.tol, ctx.tolerances);
    let mut out = vec![];
    for real in realizations() {
        let label = match real.tag() {
            RealizationTag::Z => format!("Z({},{})", real.m(), real.r()),
            tag => format!("{tag:?}({})", real.n()),
        };
        let r1 = real.clone();
        out.push(Check::new(
            format!("cocycle and eta/delta laws on {label}"),
            30,
            tol,
            &["cocycle", "eta", "delta"],
            move |rng| {
                let real = &r1;
                let g1 = real.random_element(rng, 0.5);
                let g2 = real.random_element(rng, 0.5);
                let z = real.random_point(rng, 0.5)?;
                let w = real.random_point(rng, 0.5)?;
                let (g2z, l2) = real.act(&g2, &z, &t)?;
                let (_, l1) = real.act(&g1, &g2z, &t)?;
                let (_, l12) = real.act(&(&g1 * &g2), &z, &t)?;
                let cocycle = rel(&l12.lambda, &(&l1.lambda * &l2.lambda));
                let (g1z, a) = real.act(&g1, &z, &t)?;
                let (g1w, b) = real.act(&g1, &w, &t)?;
                let lhs = a.lambda.adjoint() * real.eta(&g1z, &g1w) * &b.lambda;
                let eta = rel(&lhs, &real.eta(&z, &w));
                let d = real.eta_delta(&z, &z)?.delta;
                let dg = real.eta_delta(&g1z, &g1z)?.delta;
                Ok(vec![cocycle, eta, (a.j.norm_sqr() * dg - d).norm() / d.norm()])
            },
        ));
        let r2 = real.clone();
        out.push(Check::new(format!("stabilizer unitarity on {label}"), 10, tol, &["unitarity"], move |rng| {
            let real = &r2;
            let k = Realization::random_from_basis(real.stabilizer_algebra_basis(), rng, 0.8);
            let (_, aut) = real.act(&k, real.origin(), &t)?;
            Ok(vec![max_abs(&(aut.lambda.adjoint() * &aut.lambda - eye(real.n())))])
        }));
    }
    out.push(Check::new("Cayley round trip", 40, 1e-10, &["round_trip"], move |rng| {
        let h = Realization::h(rng.random_range(1..=4));
        let z = h.random_point(rng, 0.6)?;
        Ok(vec![max_abs(&(cayley_inverse(&cayley(&z)?)? - &z))])
    }));
    out
}

fn doubling(ctx: &Ctx) -> Vec<Check> {
    let (a, tol) = (ctx.alg, ctx.tol);
    let mut out = vec![Check::exact("R* omega R = J", 1, &["r_identity"], move |_| {
        let mut ok = true;
        for (m, r) in [(1, 0), (2, 0), (1, 1), (1, 2), (2, 1)] {
            ok &= r_identity_holds(m, r, a)?;
        }
        Ok(vec![ok])
    })];
    for (m, r) in [(1, 0), (1, 1), (2, 0)] {
        out.push(Check::new(
            format!("diagonal embedding compatibility, (m,r) = ({m},{r})"),
            40,
            tol,
            &["equivariance", "factor", "determinant"],
            move |rng| {
                let ctx = DoublingContext::new(m, r, a)?;
                let src = ctx.source();
                let g1 = src.random_element(rng, 0.4);
                let g2 = src.random_element(rng, 0.4);
                let z1 = src.random_point(rng, 0.4)?;
                let z2 = src.random_point(rng, 0.4)?;
                let res = ctx.residuals(&g1, &g2, &z1, &z2)?;
                Ok(vec![res.equivariance, res.factor, res.determinant])
            },
        ));
        out.push(Check::new(
            format!("iota anchors, (m,r) = ({m},{r})"),
            10,
            1e-12,
            &["origin", "closed_form"],
            move |rng| {
                let ctx = DoublingContext::new(m, r, a)?;
                let src = ctx.source();
                let z0 = src.origin();
                let origin = max_abs(&(ctx.iota(z0, z0)? - eye(ctx.big_n()) * I));
                let z1 = src.random_point(rng, 0.4)?;
                let z2 = src.random_point(rng, 0.4)?;
                let closed =
                    if r == 0 { max_abs(&(ctx.iota(&z1, &z2)? - block_diag(&[&z1, &(-z2.adjoint())]))) } else { 0.0 };
                Ok(vec![origin, closed])
            },
        ));
    }
    out
}

fn lfun(ctx: &Ctx) -> Vec<Check> {
    let (tol, pmax) = (ctx.tol, ctx.pmax);
    vec![
        Check::new("zeta(2) partial Euler product", 1, 1e-4, &["pi_squared_over_6", "series"], move |_| {
            let t = DirichletCharacter::trivial(1);
            let v = lfun::dirichlet_l_partial(Complex64::new(2.0, 0.0), &t, &[], pmax)?.value.re;
            let n = 1000.0f64;
            let series: f64 = (1..1000u64).map(|k| 1.0 / (k * k) as f64).sum::<f64>()
                + 1.0 / n
                + 0.5 / (n * n)
                + 1.0 / (6.0 * n * n * n);
            Ok(vec![(v - PI * PI / 6.0).abs(), (v - series).abs()])
        }),
        Check::new("Gamma_m recurrence", 100, 1e-10, &["relative"], move |rng| {
            let m = rng.random_range(1..=4usize);
            let s = Complex64::new(rng.random_range(8.0..20.0), rng.random_range(-3.0..3.0));
            let ratio = lfun::gamma_m(m, s + 2.0)? / lfun::gamma_m(m, s)?;
            let mut expect = Complex64::new(1.0, 0.0);
            for i in 0..m {
                let x = s - 2.0 * i as f64;
                expect *= x * (x + 1.0);
            }
            Ok(vec![(ratio - expect).norm() / expect.norm()])
        }),
        Check::new("c_k closed form at n = 2", 100, 1e-12, &["absolute"], move |rng| {
            let k = rng.random_range(2..30i64);
            let s = Complex64::new(rng.random_range(6.0..20.0), rng.random_range(-2.0..2.0));
            let v = lfun::reproducing_constant(2, k, s)?.value;
            Ok(vec![(v - PI / (s + k as f64 - 1.0)).norm()])
        }),
        Check::new("c_k against the Hua integral form", 60, 1e-10, &["relative"], move |rng| {
            let n = rng.random_range(2..=4usize);
            let k = rng.random_range(2 * n as i64 + 2..20);
            let s = Complex64::new(rng.random_range(1.0..8.0), rng.random_range(-2.0..2.0));
            let a = lfun::reproducing_constant(n, k, s)?.value;
            let b = lfun::hua_constant(n, (s + k as f64) / 2.0 - n as f64 + 1.0)?;
            Ok(vec![(a - b).norm() / b.norm()])
        }),
        Check::new("Pfaffian", 100, tol, &["pf_squared_minus_det", "expansion"], move |rng| {
            let n = 2 * rng.random_range(1..=4usize);
            let mut x = MatC::zeros(n, n);
            for i in 0..n {
                for j in i + 1..n {
                    let z = Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
                    x[(i, j)] = z;
                    x[(j, i)] = -z;
                }
            }
            let pf = lfun::pfaffian(&x)?;
            let det = x.determinant();
            let ex = lfun::pfaffian_expansion(&x)?;
            Ok(vec![(pf * pf - det).norm() / det.norm().max(1e-3), (pf - ex).norm() / (1.0 + ex.norm())])
        }),
        Check::new("Dirichlet character multiplicativity", 100, 1e-14, &["absolute"], move |rng| {
            let chi = DirichletCharacter::legendre(11)?;
            let (x, y) = (rng.random_range(1..10_000i64), rng.random_range(1..10_000i64));
            Ok(vec![(chi.eval(x * y) - chi.eval(x) * chi.eval(y)).norm()])
        }),
    ]
}

fn eis(ctx: &Ctx) -> Vec<Check> {
    let a = ctx.alg;
    let pos = ctx.tolerances.pos;
    let params = |m: usize, l: i64| EisensteinParams { m, l, chi: DirichletCharacter::trivial(1), level: 1 };
    vec![
        Check::exact("non-positive-definite indices give exact zero", 50, &["zero"], move |rng| {
            let sets: [&[i64]; 5] = [&[1, -1], &[-1, 1], &[3, -2], &[-1], &[-1, 0]];
            let signs = sets[rng.random_range(0..sets.len())];
            let h = congruent(rng, a, signs)?;
            let m = signs.len();
            let c = eis::coefficient_special_point(&h, None, &params(m, 2 * m as i64 + 1), pos)?;
            Ok(vec![c.value == Complex64::new(0.0, 0.0)])
        }),
        Check::exact("exact inertia agrees with eigenvalues", 40, &["inertia"], move |rng| {
            let sets: [&[i64]; 4] = [&[1, 1, 1], &[1, -1, 1], &[1, 0, -1], &[0, 0, 1]];
            let signs = sets[rng.random_range(0..sets.len())];
            let h = congruent(rng, a, signs)?;
            let inr = eis::inertia(&h)?;
            let ev = hermitian_eigenvalues(&real_embed(&h));
            let scale = ev.iter().fold(1.0f64, |x, y| x.max(y.abs()));
            let npos = ev.iter().filter(|&&x| x > 1e-9 * scale).count();
            let nneg = ev.iter().filter(|&&x| x < -1e-9 * scale).count();
            Ok(vec![npos == 2 * inr.positive && nneg == 2 * inr.negative])
        }),
        Check::new("xi determinant power law", 20, 1e-10, &["relative"], move |rng| {
            let m = rng.random_range(1..=2usize);
            let l = 2 * m as i64 + 1 + rng.random_range(0..3i64);
            let h = congruent(rng, a, &vec![1; m])?;
            let y0 = real_embed(&congruent(rng, a, &vec![1; m])?);
            let y = y0.scale(0.5 / eis::lambda_numeric(&h, &y0));
            let t = qf(rng.random_range(1..8), rng.random_range(1..8));
            let tf = q_to_f64(&t);
            let base = eis::xi_special(&y, &h, l, pos)?;
            let scaled = eis::xi_special(&y, &h.map(|x| x.scale(&t)), l, pos)?;
            let mf = m as f64;
            let expect = base
                * tf.powf(2.0 * mf * (l as f64 - (2.0 * mf - 1.0) / 2.0))
                * (-2.0 * PI * (tf - 1.0) * eis::lambda_numeric(&h, &y)).exp();
            Ok(vec![(scaled - expect).norm() / expect.norm()])
        }),
        Check::exact("adelic character is trivial on rationals", 200, &["exact"], move |rng| {
            let x = qf(rng.random_range(-1_000_000..1_000_000), rng.random_range(1..=10_000));
            Ok(vec![eis::adelic_char(&x) == Complex64::new(1.0, 0.0)])
        }),
        Check::new("alpha ratio at full rank inverts Lambda", 8, 1e-10, &["absolute"], move |rng| {
            let t = DirichletCharacter::trivial(1);
            let (m, h) = if rng.random_bool(0.5) {
                (1, diag_quat(&[a.scalar(q(4))]))
            } else {
                (2, diag_quat(&[a.scalar(q(2)), a.scalar(q(4))]))
            };
            let s = Complex64::new(rng.random_range(4.0..8.0), rng.random_range(-2.0..2.0));
            let r = eis::alpha_ratio(&h, s, &t, 1, 20_000, false)?;
            let lam = lfun::lambda_norm(s, &t, m, 1, 20_000)?;
            Ok(vec![(r.value * lam - 1.0).norm()])
        }),
        Check::new("substitution h -> q* h q", 20, 1e-12, &["relative"], move |rng| {
            let m = rng.random_range(1..=2usize);
            let h0 = congruent(rng, a, &vec![1; m])?;
            let g = invertible(rng, a, m);
            let lam = reduced_trace(&Mat::product(&[&g.star(), &h0, &g])?)? / q(2);
            let h = h0.map(|x| x.scale(&(q(1) / &lam)));
            let p = params(m, 2 * m as i64 + 2);
            let with_q = eis::coefficient_special_point(&h, Some(&g), &p, pos)?.value;
            let hq = Mat::product(&[&g.star(), &h, &g])?;
            let direct = eis::coefficient_special_point(&hq, None, &p, pos)?.value;
            let d_g = q_to_f64(&reduced_det(&g)?);
            let expect = direct * d_g.powf(p.l as f64 + 1.0 - 2.0 * m as f64);
            Ok(vec![if expect == Complex64::new(0.0, 0.0) {
                with_q.norm()
            } else {
                (with_q - expect).norm() / expect.norm()
            }])
        }),
    ]
}
