//! The checks of each suite. Exact suites run at any `n ≥ 2`; the
//! numerical ones at `n = 2` only and report `skipped` otherwise.

use num_complex::Complex64;
use num_traits::{One, Zero};

use super::config::{RunConfig, Suite};
use super::report::Status;
use crate::bessel::{
    m_chi_meets_opposite_borel_trivially, m_family_injective, m_of, modular_delta,
    stabilizer_check, stabilizes, x_en_of, BesselDatum, RChiDecomposition, StabilizerCharacter,
    U1Coords,
};
use crate::functional::{
    bessel_on_cell_rule, bessel_value, intertwining_bound, lambda_direct_mc, lambda_direct_mc_on,
    lambda_eval, lambda_factored, lemma_uniqueness_check, m_equivariance, m_equivariance_cell,
    scan_rchi_domain, u1_equivariance, u1_equivariance_cell, EquivariancePair, FunctionalError,
    HalfSpaceParam, McDomain, OffCellBump, QuadSettings, RChiRule,
};
use crate::group::{long_weyl_element, root_subgroup_element, GroupContext, Root};
use crate::linalg::{rat, Matrix, PolyMatrix, Polynomial, Rational, Scalar};
use crate::quadrature::{RuleFamily, TensorRule};
use crate::sampling::{random_rational, random_rationals, seeded_rng};
use crate::sections::{
    AveragedSection, BumpFunction, CellSection, CellSupported, Combination, PrincipalSeriesParam,
};

/// Result of one check before timing.
#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub status: Status,
    pub lhs: String,
    pub rhs: String,
    pub tolerance: Option<f64>,
}

impl Outcome {
    fn exact(pass: bool, lhs: impl Into<String>, rhs: impl Into<String>) -> Self {
        Self {
            status: if pass { Status::Pass } else { Status::Fail },
            lhs: lhs.into(),
            rhs: rhs.into(),
            tolerance: None,
        }
    }

    /// Passes when `gap ≤ tol`.
    fn within(gap: f64, tol: f64, lhs: impl Into<String>, rhs: impl Into<String>) -> Self {
        Self {
            status: if gap <= tol {
                Status::Pass
            } else {
                Status::Fail
            },
            lhs: lhs.into(),
            rhs: rhs.into(),
            tolerance: Some(tol),
        }
    }

    fn skipped(reason: &str) -> Self {
        Self {
            status: Status::Skipped,
            lhs: reason.to_string(),
            rhs: String::new(),
            tolerance: None,
        }
    }

    fn error(e: impl std::fmt::Display) -> Self {
        Self {
            status: Status::Fail,
            lhs: format!("error: {e}"),
            rhs: String::new(),
            tolerance: None,
        }
    }
}

/// Data shared by every check of a run.
pub struct Env {
    pub config: RunConfig,
    pub ctx: GroupContext,
    pub datum: Result<BesselDatum, String>,
    pub omega: StabilizerCharacter,
    pub params: PrincipalSeriesParam,
    pub settings: QuadSettings,
}

impl Env {
    pub fn new(config: &RunConfig) -> Self {
        let ctx = GroupContext::new(config.n).expect("validated rank");
        let datum = config
            .abc()
            .map_err(|e| e.to_string())
            .and_then(|abc| BesselDatum::new(&ctx, abc).map_err(|e| e.to_string()));
        Self {
            ctx,
            datum,
            omega: StabilizerCharacter::new(config.c_omega),
            params: PrincipalSeriesParam::new(config.nu_complex(), config.eta_bits.clone()),
            settings: QuadSettings::default(),
            config: config.clone(),
        }
    }

    fn numeric(&self) -> bool {
        self.config.n == 2
    }

    fn section(&self, params: PrincipalSeriesParam) -> CellSection {
        let n = self.ctx.n();
        CellSection::new(
            &self.ctx,
            params,
            BumpFunction::plain(vec![0.0; n * n], 0.5),
        )
    }
}

type Run = Box<dyn Fn(&Env) -> Outcome + Send + Sync>;

pub struct Check {
    pub suite: Suite,
    pub id: String,
    pub anchor: String,
    run: Run,
}

impl Check {
    fn new<F>(suite: Suite, id: impl Into<String>, anchor: impl Into<String>, run: F) -> Self
    where
        F: Fn(&Env) -> Outcome + Send + Sync + 'static,
    {
        Self {
            suite,
            id: id.into(),
            anchor: anchor.into(),
            run: Box::new(run),
        }
    }

    /// Runs the check, failing it if the datum could not be built.
    pub fn run(&self, env: &Env) -> Outcome {
        match &env.datum {
            Ok(_) => (self.run)(env),
            Err(e) => Outcome::error(e),
        }
    }
}

fn datum(env: &Env) -> &BesselDatum {
    env.datum.as_ref().expect("checked by Check::run")
}

/// Full-precision decimal.
pub fn fmt_f(x: f64) -> String {
    format!("{x:e}")
}

pub fn fmt_c(z: Complex64) -> String {
    let sign = if z.im.is_sign_negative() { '-' } else { '+' };
    format!("{:e}{sign}{:e}i", z.re, z.im.abs())
}

fn fmt_rats(v: &[Rational]) -> String {
    let parts: Vec<String> = v.iter().map(|r| r.to_string()).collect();
    format!("({})", parts.join(", "))
}

fn fmt_matrix(m: &Matrix<Rational>) -> String {
    let rows: Vec<String> = (0..m.rows())
        .map(|i| {
            let row: Vec<String> = (0..m.cols()).map(|j| m[(i, j)].to_string()).collect();
            format!("[{}]", row.join(", "))
        })
        .collect();
    format!("[{}]", rows.join(", "))
}

/// `ok/total` for a batch of sample checks.
fn batch(results: impl IntoIterator<Item = bool>) -> Outcome {
    let v: Vec<bool> = results.into_iter().collect();
    let ok = v.iter().filter(|b| **b).count();
    Outcome::exact(
        ok == v.len(),
        format!("{ok} hold"),
        format!("{} sampled", v.len()),
    )
}

pub fn checks(suite: Suite, config: &RunConfig) -> Vec<Check> {
    match suite {
        Suite::ExactAlgebra => exact_algebra(config),
        Suite::Stabilizer => stabilizer(),
        Suite::Uniqueness => uniqueness(config),
        Suite::Equivariance => equivariance(),
        Suite::Domination => domination(),
        Suite::Nonvanishing => nonvanishing(),
        Suite::CrossMethod => cross_method(),
    }
}

/// The explicit `M_χ` block, transcribed entry by entry.
pub fn displayed_m_block() -> Matrix<Polynomial<Rational>> {
    let p = |c: [(i64, i64); 3]| Polynomial::new(c.iter().map(|&(a, b)| rat(a, b)).collect());
    Matrix::from_rows(vec![
        vec![
            p([(1, 1), (1, 1), (1, 4)]),
            p([(0, 1), (1, 1), (1, 2)]),
            p([(0, 1), (0, 1), (-1, 2)]),
        ],
        vec![
            p([(0, 1), (-1, 2), (-1, 4)]),
            p([(1, 1), (0, 1), (-1, 2)]),
            p([(0, 1), (-1, 1), (1, 2)]),
        ],
        vec![
            p([(0, 1), (0, 1), (-1, 8)]),
            p([(0, 1), (1, 2), (-1, 4)]),
            p([(1, 1), (-1, 1), (1, 4)]),
        ],
    ])
    .expect("3x3")
}

fn displayed_m_family(ctx: &GroupContext) -> PolyMatrix {
    let block = displayed_m_block();
    let n = ctx.n();
    Matrix::from_fn(ctx.dim(), ctx.dim(), |i, j| {
        if (n - 1..=n + 1).contains(&i) && (n - 1..=n + 1).contains(&j) {
            block[(i + 1 - n, j + 1 - n)].clone()
        } else if i == j {
            Polynomial::one()
        } else {
            Polynomial::zero()
        }
    })
}

fn random_u1(datum: &BesselDatum, rng: &mut rand_chacha::ChaCha8Rng) -> U1Coords<Rational> {
    U1Coords::new(random_rationals(rng, datum.u1_dim(), 9, 5))
}

fn exact_algebra(config: &RunConfig) -> Vec<Check> {
    let s = Suite::ExactAlgebra;
    let seed = config.seed;
    vec![
        Check::new(s, "exact-algebra.form-involution", "J^2 = I", |env| {
            let j = env.ctx.form();
            let jj = j * j;
            let id = Matrix::identity(env.ctx.dim());
            Outcome::exact(jj == id, fmt_matrix(&jj), fmt_matrix(&id))
        }),
        Check::new(
            s,
            "exact-algebra.w0-preserves-form",
            "w0^T J w0 = J",
            |env| {
                let w0 = long_weyl_element::<Rational>(&env.ctx).into_matrix();
                let j = env.ctx.form();
                let lhs = &(&w0.transpose() * j) * &w0;
                Outcome::exact(&lhs == j, fmt_matrix(&lhs), fmt_matrix(j))
            },
        ),
        Check::new(s, "exact-algebra.w0-determinant", "det w0 = 1", |env| {
            let w0 = long_weyl_element::<Rational>(&env.ctx).into_matrix();
            match w0.determinant() {
                Ok(d) => Outcome::exact(d.is_one(), d.to_string(), "1"),
                Err(e) => Outcome::error(e),
            }
        }),
        Check::new(s, "exact-algebra.w0-involution", "w0^2 = I", |env| {
            let w0 = long_weyl_element::<Rational>(&env.ctx).into_matrix();
            let sq = &w0 * &w0;
            Outcome::exact(sq.is_identity(), fmt_matrix(&sq), "I")
        }),
        Check::new(
            s,
            "exact-algebra.w0-longest",
            "w0 maps every positive root subgroup into the opposite Borel",
            |env| {
                let ctx = &env.ctx;
                let w0 = long_weyl_element::<Rational>(ctx).into_matrix();
                batch(ctx.roots().positive_roots().iter().map(|r| {
                    let x = root_subgroup_element(ctx, r, Rational::one()).expect("positive root");
                    let c = &(&w0 * x.matrix()) * &w0;
                    c.is_lower_triangular() && !c.is_identity()
                }))
            },
        ),
        Check::new(
            s,
            "exact-algebra.rho",
            "rho is half the sum of the positive roots",
            |env| {
                let n = env.ctx.n();
                let roots = env.ctx.roots();
                let mut sum = vec![Rational::zero(); n];
                for r in roots.positive_roots() {
                    for (acc, c) in sum.iter_mut().zip(r.vector(n)) {
                        *acc = acc.clone() + Rational::from_i64(c);
                    }
                }
                let half: Vec<Rational> = sum.iter().map(|v| v / Rational::from_i64(2)).collect();
                // Closed form (n − i + 1/2), e.g. (3/2, 1/2) and (5/2, 3/2, 1/2).
                let closed: Vec<Rational> =
                    (0..n).map(|i| rat(2 * (n - i) as i64 - 1, 2)).collect();
                let ok = roots.rho() == half.as_slice() && half == closed;
                Outcome::exact(ok, fmt_rats(roots.rho()), fmt_rats(&closed))
            },
        ),
        Check::new(s, "exact-algebra.v-isotropic", "v^T J_3 v = 0", |env| {
            let d = datum(env);
            let j3 = GroupContext::new(1).expect("rank 1").form().clone();
            let q = &(&d.v().transpose() * &j3) * d.v();
            Outcome::exact(q.is_zero_matrix(), fmt_matrix(&q), "[[0]]")
        }),
        Check::new(s, "exact-algebra.g0-maps-v0", "g0 v0 = v", |env| {
            let d = datum(env);
            let lhs = d.g0_block() * d.v0();
            Outcome::exact(&lhs == d.v(), fmt_matrix(&lhs), fmt_matrix(d.v()))
        }),
        Check::new(s, "exact-algebra.g0-in-so12", "g0 in SO(1,2)", |env| {
            let d = datum(env);
            let small = GroupContext::new(1).expect("rank 1");
            let ok = small.is_member(d.g0_block()).unwrap_or(false);
            Outcome::exact(ok, fmt_matrix(d.g0_block()), "member of SO(J_3)")
        }),
        Check::new(
            s,
            "exact-algebra.m-family",
            "m(x) = g0 U_{e_n}(x) g0^{-1} coefficientwise against the displayed M_chi",
            |env| {
                let d = datum(env);
                let want = displayed_m_family(&env.ctx);
                let ok = d.m_family() == &want;
                let mismatches = (0..want.rows())
                    .flat_map(|i| (0..want.cols()).map(move |j| (i, j)))
                    .filter(|&(i, j)| d.m_family()[(i, j)] != want[(i, j)])
                    .count();
                Outcome::exact(
                    ok,
                    format!("{mismatches} entries differ"),
                    "0 entries differ",
                )
            },
        ),
        Check::new(
            s,
            "exact-algebra.m-law",
            "m(x) m(y) = m(x + y)",
            move |env| {
                let d = datum(env);
                let mut rng = seeded_rng(seed ^ 0x6d6c);
                batch((0..5).map(|_| {
                    let (x, y) = (
                        random_rational(&mut rng, 9, 5),
                        random_rational(&mut rng, 9, 5),
                    );
                    m_of(d, &x).compose(&m_of(d, &y)) == m_of(d, &(x + y))
                }))
            },
        ),
        Check::new(
            s,
            "exact-algebra.chi-character",
            "chi(u u') = chi(u) chi(u')",
            move |env| {
                let d = datum(env);
                let mut rng = seeded_rng(seed ^ 0x6368);
                batch((0..50).map(|_| {
                    let u = random_u1(d, &mut rng).assemble(d.ctx()).expect("U1");
                    let v = random_u1(d, &mut rng).assemble(d.ctx()).expect("U1");
                    let uv = u.matrix() * v.matrix();
                    d.chi().phase(&uv) == d.chi().phase(u.matrix()) + d.chi().phase(v.matrix())
                }))
            },
        ),
        Check::new(
            s,
            "exact-algebra.chi-stabilized",
            "chi^{m(x)} = chi",
            move |env| {
                let d = datum(env);
                let mut rng = seeded_rng(seed ^ 0x7374);
                batch((0..20).map(|_| {
                    let x = random_rational(&mut rng, 9, 5);
                    stabilizer_check(d, &x, &random_u1(d, &mut rng))
                }))
            },
        ),
        Check::new(
            s,
            "exact-algebra.modular",
            "delta_{R_chi}(m(x)) = 1",
            move |env| {
                let d = datum(env);
                let mut rng = seeded_rng(seed ^ 0x6d64);
                let xs: Vec<Rational> = (0..5).map(|_| random_rational(&mut rng, 9, 5)).collect();
                let deltas: Result<Vec<Rational>, _> =
                    xs.iter().map(|x| modular_delta(d, x)).collect();
                match deltas {
                    Ok(v) => Outcome::exact(v.iter().all(One::is_one), fmt_rats(&v), "all 1"),
                    Err(e) => Outcome::error(e),
                }
            },
        ),
        Check::new(
            s,
            "exact-algebra.opposite-borel",
            "M_chi meets the opposite Borel in 1",
            |env| {
                let d = datum(env);
                let ok = m_chi_meets_opposite_borel_trivially(d);
                let g = crate::bessel::opposite_borel_constraint(d);
                Outcome::exact(
                    ok,
                    format!("gcd of upper entries {}", fmt_rats(g.coeffs())),
                    "(0, 1)",
                )
            },
        ),
    ]
}

fn stabilizer() -> Vec<Check> {
    let s = Suite::Stabilizer;
    vec![
        Check::new(s, "stabilizer.m-in-g", "m(x) in G", |env| {
            let d = datum(env);
            batch(
                [rat(-3, 2), rat(1, 7), rat(5, 1)]
                    .iter()
                    .map(|x| env.ctx.is_member(m_of(d, x).matrix()).unwrap_or(false)),
            )
        }),
        Check::new(
            s,
            "stabilizer.x-en",
            "g0^{-1} m(x) g0 = U_{e_n}(x)",
            |env| {
                let d = datum(env);
                let n = env.ctx.n();
                batch([rat(-3, 2), rat(1, 7), rat(5, 1)].into_iter().map(|x| {
                    let u = root_subgroup_element(&env.ctx, &Root::Short(n - 1), x.clone())
                        .expect("e_n");
                    x_en_of(d, &x) == u
                }))
            },
        ),
        Check::new(
            s,
            "stabilizer.normalizes-u1",
            "m(x) U1 m(x)^{-1} = U1",
            |env| {
                let d = datum(env);
                let mut rng = seeded_rng(env.config.seed ^ 0x6e75);
                batch((0..20).map(|_| {
                    let x = random_rational(&mut rng, 9, 5);
                    let m = m_of(d, &x).into_matrix();
                    let u = random_u1(d, &mut rng).assemble(d.ctx()).expect("U1");
                    let c = &(&m * u.matrix()) * &crate::group::form_inverse(&m);
                    crate::group::extract_unipotent_coords(d.ctx(), &c)
                        .ok()
                        .and_then(|coords| U1Coords::from_unipotent(&coords).ok())
                        .is_some()
                }))
            },
        ),
        Check::new(s, "stabilizer.chi-invariant", "chi^{m(x)} = chi", |env| {
            let d = datum(env);
            let mut rng = seeded_rng(env.config.seed ^ 0x6369);
            batch((0..100).map(|_| {
                let x = random_rational(&mut rng, 9, 5);
                stabilizer_check(d, &x, &random_u1(d, &mut rng))
            }))
        }),
        Check::new(
            s,
            "stabilizer.torus-control",
            "a torus element of M_1 moves chi",
            |env| {
                let d = datum(env);
                let torus = Matrix::from_rows(vec![
                    vec![rat(2, 1), rat(0, 1), rat(0, 1)],
                    vec![rat(0, 1), rat(1, 1), rat(0, 1)],
                    vec![rat(0, 1), rat(0, 1), rat(1, 2)],
                ])
                .expect("3x3");
                let block = &(d.g0_block() * &torus) * &d.g0_block().inverse().expect("invertible");
                let h = env.ctx.embed_middle(&block).expect("3x3 block");
                let u = U1Coords::new((0..d.u1_dim()).map(|i| rat(i as i64 + 1, 3)).collect());
                let moved = !stabilizes(d, &h, &u);
                Outcome::exact(
                    moved,
                    format!("stabilizes = {}", !moved),
                    "stabilizes = false",
                )
            },
        ),
        Check::new(s, "stabilizer.injective", "m(x) = 1 only at x = 0", |env| {
            let ok = m_family_injective(datum(env));
            Outcome::exact(ok, ok.to_string(), "true")
        }),
        Check::new(s, "stabilizer.modular", "delta_{R_chi}(m(x)) = 1", |env| {
            let d = datum(env);
            let xs: Vec<Rational> = (-4..=5).map(|k| rat(k, 3)).collect();
            let deltas: Result<Vec<Rational>, _> = xs.iter().map(|x| modular_delta(d, x)).collect();
            match deltas {
                Ok(v) => Outcome::exact(v.iter().all(One::is_one), fmt_rats(&v), "all 1"),
                Err(e) => Outcome::error(e),
            }
        }),
    ]
}

fn uniqueness(config: &RunConfig) -> Vec<Check> {
    let s = Suite::Uniqueness;
    let trials = if config.n == 2 { 100 } else { 25 };
    vec![
        Check::new(
            s,
            "uniqueness.identity",
            "(1, 0, 1) decomposes to itself",
            |env| {
                let d = datum(env);
                let parts = RChiDecomposition {
                    b: crate::group::BorelElement::identity(&env.ctx),
                    x: Rational::zero(),
                    u1: U1Coords::zero(&env.ctx),
                };
                let g = crate::bessel::lemma_compose(d, &parts);
                let ok = crate::bessel::lemma_decompose(d, &g).as_ref() == Some(&parts);
                Outcome::exact(ok, ok.to_string(), "true")
            },
        ),
        Check::new(
            s,
            "uniqueness.round-trips",
            "(b, m, u1) -> b w0 m u1 is injective on random rational triples",
            move |env| {
                let d = datum(env);
                let ok = lemma_uniqueness_check(d, trials, env.config.seed);
                Outcome::exact(
                    ok,
                    format!("all recovered = {ok}"),
                    format!("{trials} trials"),
                )
            },
        ),
    ]
}

fn needs_rank_two(env: &Env) -> Option<Outcome> {
    (!env.numeric()).then(|| Outcome::skipped("numerical checks run at n = 2"))
}

fn pair_outcome(p: &EquivariancePair, tol: f64) -> Outcome {
    Outcome::within(p.relative_gap(), tol, fmt_c(p.lhs), fmt_c(p.rhs))
}

/// Ten elements of `U₁` and ten `x₁`, drawn from the run seed.
fn equivariance_samples(env: &Env) -> (Vec<U1Coords<f64>>, Vec<Rational>) {
    let d = datum(env);
    let mut rng = seeded_rng(env.config.seed ^ 0x6571);
    let u1s = (0..10)
        .map(|_| {
            let v: Vec<f64> = random_rationals(&mut rng, d.u1_dim(), 9, 5)
                .iter()
                .map(Scalar::to_f64)
                .collect();
            U1Coords::new(v)
        })
        .collect();
    let xs = (0..10).map(|_| random_rational(&mut rng, 9, 5)).collect();
    (u1s, xs)
}

/// Trapezoid level of the `R_χ` grids used with moved nodes.
const GRID_LEVEL: u32 = 3;

fn rchi_rule(env: &Env, f: &dyn CellSupported) -> Result<RChiRule, FunctionalError> {
    let bx = scan_rchi_domain(datum(env), &f.cell_support(), None, &env.settings)?;
    Ok(RChiRule::new(TensorRule::with_family(
        &bx,
        GRID_LEVEL,
        RuleFamily::Trapezoid,
    )))
}

fn equivariance() -> Vec<Check> {
    let s = Suite::Equivariance;
    let mut out = Vec::new();
    for k in 0..10 {
        out.push(Check::new(
            s,
            format!("equivariance.u1.cell.{k:02}"),
            "B(u1) = chi(u1) Lambda(f), cell-coordinate rule",
            move |env| {
                if let Some(o) = needs_rank_two(env) {
                    return o;
                }
                let (u1s, _) = equivariance_samples(env);
                let f = env.section(env.params.clone());
                let p =
                    u1_equivariance_cell(datum(env), &env.omega, &f, env.settings.nodes, &u1s[k]);
                pair_outcome(&p, env.config.tol)
            },
        ));
        out.push(Check::new(
            s,
            format!("equivariance.u1.grid.{k:02}"),
            "B(u1) = chi(u1) Lambda(f), R_chi grid with moved nodes",
            move |env| {
                if let Some(o) = needs_rank_two(env) {
                    return o;
                }
                let (u1s, _) = equivariance_samples(env);
                let f = env.section(env.params.clone());
                match rchi_rule(env, &f) {
                    Ok(rule) => pair_outcome(
                        &u1_equivariance(datum(env), &env.omega, &f, &rule, &u1s[k]),
                        env.config.tol,
                    ),
                    Err(e) => Outcome::error(e),
                }
            },
        ));
    }
    for k in 0..10 {
        out.push(Check::new(
            s,
            format!("equivariance.m.cell.{k:02}"),
            "B(m(x1)) = delta^{1/2} omega(m(x1)) Lambda(f), cell-coordinate rule",
            move |env| {
                if let Some(o) = needs_rank_two(env) {
                    return o;
                }
                let (_, xs) = equivariance_samples(env);
                let f = env.section(env.params.clone());
                match m_equivariance_cell(datum(env), &env.omega, &f, env.settings.nodes, &xs[k]) {
                    Ok(p) => pair_outcome(&p, env.config.tol),
                    Err(e) => Outcome::error(e),
                }
            },
        ));
        out.push(Check::new(
            s,
            format!("equivariance.m.grid.{k:02}"),
            "B(m(x1)) = delta^{1/2} omega(m(x1)) Lambda(f), R_chi grid with moved nodes",
            move |env| {
                if let Some(o) = needs_rank_two(env) {
                    return o;
                }
                let (_, xs) = equivariance_samples(env);
                let f = env.section(env.params.clone());
                let res = rchi_rule(env, &f)
                    .and_then(|rule| m_equivariance(datum(env), &env.omega, &f, &rule, &xs[k]));
                match res {
                    Ok(p) => pair_outcome(&p, env.config.tol),
                    Err(e) => Outcome::error(e),
                }
            },
        ));
    }
    out.push(Check::new(
        s,
        "equivariance.identity",
        "B(1) = Lambda(f)",
        |env| {
            if let Some(o) = needs_rank_two(env) {
                return o;
            }
            let f = env.section(env.params.clone());
            let d = datum(env);
            let id = Matrix::identity(env.ctx.dim());
            let res = lambda_eval(d, &env.omega, &f, env.config.tol, &env.settings).and_then(|l| {
                Ok((
                    l,
                    bessel_value(d, &env.omega, &f, &id, env.config.tol, &env.settings)?,
                ))
            });
            match res {
                Ok((l, b)) => {
                    let gap = (l.value.value() - b.value.value()).norm() / l.value.norm();
                    Outcome::within(
                        gap,
                        env.config.tol,
                        fmt_c(b.value.value()),
                        fmt_c(l.value.value()),
                    )
                }
                Err(e) => Outcome::error(e),
            }
        },
    ));
    out.push(Check::new(
        s,
        "equivariance.linearity",
        "Lambda(a f1 + b f2) = a Lambda(f1) + b Lambda(f2)",
        |env| {
            if let Some(o) = needs_rank_two(env) {
                return o;
            }
            let d = datum(env);
            let f1 = env.section(env.params.clone());
            let f2 = CellSection::new(
                &env.ctx,
                env.params.clone(),
                BumpFunction::new(
                    vec![0.2, -0.1, 0.3, 0.0],
                    vec![0.4; 4],
                    vec![0.5, 0.0, -1.0, 0.25],
                ),
            );
            let mut rng = seeded_rng(env.config.seed ^ 0x6c69);
            let mut draw = || {
                let v = random_rationals(&mut rng, 2, 9, 5);
                Complex64::new(v[0].to_f64(), v[1].to_f64())
            };
            let (a, b) = (draw(), draw());
            let combo = Combination::new(vec![(a, &f1 as &dyn CellSupported), (b, &f2)]);
            let k = env.settings.nodes;
            let (lhs, _) = bessel_on_cell_rule(d, &env.omega, &combo, k, None);
            let (l1, _) = bessel_on_cell_rule(d, &env.omega, &f1, k, None);
            let (l2, _) = bessel_on_cell_rule(d, &env.omega, &f2, k, None);
            let rhs = a * l1 + b * l2;
            Outcome::within(
                (lhs - rhs).norm() / rhs.norm(),
                1e-8,
                fmt_c(lhs),
                fmt_c(rhs),
            )
        },
    ));
    out.push(Check::new(
        s,
        "equivariance.self-convergence",
        "Lambda(f) against the rule with 4x the nodes per axis",
        |env| {
            if let Some(o) = needs_rank_two(env) {
                return o;
            }
            let d = datum(env);
            let f = env.section(env.params.clone());
            let k = env.settings.nodes;
            let (coarse, _) = bessel_on_cell_rule(d, &env.omega, &f, k, None);
            let (fine, _) = bessel_on_cell_rule(d, &env.omega, &f, 4 * k, None);
            Outcome::within(
                (coarse - fine).norm() / fine.norm(),
                1e-4,
                fmt_c(coarse),
                fmt_c(fine),
            )
        },
    ));
    out
}

/// The configured `ν` and two more points of the half space.
fn domination_points(env: &Env) -> Vec<Vec<Complex64>> {
    vec![
        env.config.nu_complex(),
        vec![Complex64::new(4.5, 1.0), Complex64::new(1.5, -0.5)],
        vec![Complex64::new(2.5, -2.0), Complex64::new(0.75, 2.0)],
    ]
}

fn domination() -> Vec<Check> {
    let s = Suite::Domination;
    let mut out = Vec::new();
    for k in 0..3 {
        out.push(Check::new(
            s,
            format!("domination.bound.{k}"),
            "|Lambda(f)| <= int_U |f(w0 u g0^{-1})| du",
            move |env| {
                if let Some(o) = needs_rank_two(env) {
                    return o;
                }
                let nu = domination_points(env).swap_remove(k);
                let f = env.section(PrincipalSeriesParam::new(nu, env.config.eta_bits.clone()));
                match intertwining_bound(datum(env), &env.omega, &f, env.config.tol, &env.settings)
                {
                    Ok(b) => Outcome {
                        status: if b.dominated() {
                            Status::Pass
                        } else {
                            Status::Fail
                        },
                        lhs: fmt_f(b.lhs),
                        rhs: fmt_f(b.rhs),
                        tolerance: Some(b.lhs_err + b.rhs_err),
                    },
                    Err(e) => Outcome::error(e),
                }
            },
        ));
        out.push(Check::new(
            s,
            format!("domination.midpoint.{k}"),
            "int_{R_chi} |f(w0 m u)| = int_U |f(w0 u g0^{-1})| du",
            move |env| {
                if let Some(o) = needs_rank_two(env) {
                    return o;
                }
                let nu = domination_points(env).swap_remove(k);
                let f = env.section(PrincipalSeriesParam::new(nu, env.config.eta_bits.clone()));
                match intertwining_bound(datum(env), &env.omega, &f, env.config.tol, &env.settings)
                {
                    Ok(b) => Outcome::within(b.chain_gap(), 1e-3, fmt_f(b.middle), fmt_f(b.rhs)),
                    Err(e) => Outcome::error(e),
                }
            },
        ));
    }
    out.push(Check::new(
        s,
        "domination.half-space",
        "nu outside Re<nu, alpha> > 0 is rejected",
        |env| {
            let mut nu = env.config.nu_complex();
            nu.reverse();
            let rejected = HalfSpaceParam::new(&env.ctx, nu).is_err();
            Outcome::exact(
                rejected,
                format!("rejected = {rejected}"),
                "rejected = true",
            )
        },
    ));
    out
}

/// The configured `ν` and three shifts of it.
fn nonvanishing_points(env: &Env) -> Vec<Vec<Complex64>> {
    [
        Complex64::new(0.0, 0.0),
        Complex64::new(1.0, 1.0),
        Complex64::new(2.0, -0.5),
        Complex64::new(0.5, 3.0),
    ]
    .iter()
    .map(|shift| env.config.nu_complex().iter().map(|z| z + shift).collect())
    .collect()
}

/// Borel signs `(−1, 1, …, 1)`, so that `η` enters the `B`-factor.
fn nonvanishing_section(
    env: &Env,
    params: PrincipalSeriesParam,
    omega: &StabilizerCharacter,
) -> AveragedSection {
    let mut s = AveragedSection::modulated(datum(env), params, omega, 0.5);
    s.borel_signs[0] = -1;
    s
}

const C_OMEGAS: [f64; 3] = [0.0, 0.25, 0.5];

fn nonvanishing() -> Vec<Check> {
    let s = Suite::Nonvanishing;
    let mut out = Vec::new();
    for nu_k in 0..4 {
        for (c_k, &c_omega) in C_OMEGAS.iter().enumerate() {
            out.push(Check::new(
                s,
                format!("nonvanishing.grid.nu{nu_k}.c{c_k}"),
                "Lambda(f_phi) != 0 for every eta: |value| > 10 abs_err",
                move |env| {
                    let nu = nonvanishing_points(env).swap_remove(nu_k);
                    let omega = StabilizerCharacter::new(c_omega);
                    let n = env.ctx.n();
                    let mut worst: Option<(f64, f64)> = None;
                    for mask in 0..1u32 << n {
                        let bits: Vec<bool> = (0..n).map(|i| mask >> i & 1 == 1).collect();
                        let sec = nonvanishing_section(
                            env,
                            PrincipalSeriesParam::new(nu.clone(), bits),
                            &omega,
                        );
                        match lambda_factored(&omega, &sec, 1e-12) {
                            Ok(f) => {
                                let (v, e) = (f.total.value.norm(), f.total.value.abs_err);
                                let ratio = v / e.max(f64::MIN_POSITIVE);
                                if worst
                                    .is_none_or(|(wv, we)| ratio < wv / we.max(f64::MIN_POSITIVE))
                                {
                                    worst = Some((v, e));
                                }
                            }
                            Err(e) => return Outcome::error(e),
                        }
                    }
                    let (v, e) = worst.expect("at least one eta");
                    Outcome::exact(v > 10.0 * e, fmt_f(v), fmt_f(10.0 * e))
                },
            ));
        }
    }
    out.push(Check::new(
        s,
        "nonvanishing.support-vanishing",
        "phi vanishing on B w0 P gives Lambda = 0",
        |env| {
            if let Some(o) = needs_rank_two(env) {
                return o;
            }
            let d = datum(env);
            let sec = AveragedSection::modulated(d, env.params.clone(), &env.omega, 0.5);
            let domain = McDomain::for_section(&sec);
            let phi = OffCellBump::new(&env.ctx, Matrix::identity(env.ctx.dim()), 0.5);
            let r = lambda_direct_mc_on(
                d,
                &env.omega,
                &env.params,
                &phi,
                &domain,
                1 << 16,
                env.config.seed,
            );
            Outcome::exact(
                r.value.norm() <= r.value.abs_err,
                fmt_f(r.value.norm()),
                fmt_f(r.value.abs_err),
            )
        },
    ));
    out.push(Check::new(
        s,
        "nonvanishing.eta-dependence",
        "flipping one sign of eta changes only the B-factor",
        |env| {
            let mut bits = env.config.eta_bits.clone();
            let a = nonvanishing_section(
                env,
                PrincipalSeriesParam::new(env.config.nu_complex(), bits.clone()),
                &env.omega,
            );
            bits[0] = !bits[0];
            let b = nonvanishing_section(
                env,
                PrincipalSeriesParam::new(env.config.nu_complex(), bits),
                &env.omega,
            );
            match (
                lambda_factored(&env.omega, &a, 1e-12),
                lambda_factored(&env.omega, &b, 1e-12),
            ) {
                (Ok(fa), Ok(fb)) => {
                    let same = fa.phi_w0 == fb.phi_w0
                        && fa.m_factor == fb.m_factor
                        && fa.u1_factor == fb.u1_factor;
                    let flipped = fa.b_factor.value() == -fb.b_factor.value();
                    Outcome::exact(
                        same && flipped,
                        fmt_c(fa.b_factor.value()),
                        fmt_c(fb.b_factor.value()),
                    )
                }
                (Err(e), _) | (_, Err(e)) => Outcome::error(e),
            }
        },
    ));
    out
}

fn cross_method() -> Vec<Check> {
    let s = Suite::CrossMethod;
    vec![
        Check::new(
            s,
            "cross-method.mc-vs-factored",
            "|MC - factored| <= 3 (SE + abs_err)",
            |env| {
                if let Some(o) = needs_rank_two(env) {
                    return o;
                }
                let sec =
                    AveragedSection::modulated(datum(env), env.params.clone(), &env.omega, 0.5);
                let f = match lambda_factored(&env.omega, &sec, 1e-12) {
                    Ok(f) => f,
                    Err(e) => return Outcome::error(e),
                };
                let mc = lambda_direct_mc(&env.omega, &sec, env.config.mc_samples, env.config.seed);
                let bound = 3.0 * (mc.value.abs_err + f.total.value.abs_err);
                let gap = (mc.value.value() - f.total.value.value()).norm();
                Outcome::within(
                    gap,
                    bound,
                    fmt_c(mc.value.value()),
                    fmt_c(f.total.value.value()),
                )
            },
        ),
        Check::new(
            s,
            "cross-method.se-scaling",
            "SE(N) / SE(N/2) = 1/sqrt(2) within 0.05",
            |env| {
                if let Some(o) = needs_rank_two(env) {
                    return o;
                }
                let sec =
                    AveragedSection::modulated(datum(env), env.params.clone(), &env.omega, 0.5);
                let n = env.config.mc_samples;
                let half = lambda_direct_mc(&env.omega, &sec, n / 2, env.config.seed);
                let full = lambda_direct_mc(&env.omega, &sec, n, env.config.seed);
                let ratio = full.value.abs_err / half.value.abs_err;
                let want = std::f64::consts::FRAC_1_SQRT_2;
                Outcome::within((ratio - want).abs(), 0.05, fmt_f(ratio), fmt_f(want))
            },
        ),
        Check::new(
            s,
            "cross-method.cell-vs-grid",
            "Lambda(f) in cell coordinates against the R_chi grid",
            |env| {
                if let Some(o) = needs_rank_two(env) {
                    return o;
                }
                let d = datum(env);
                let f = env.section(env.params.clone());
                let cell = lambda_eval(d, &env.omega, &f, env.config.tol, &env.settings);
                // Finest grid only, with its nested error estimate.
                let finest = QuadSettings {
                    level: env.settings.max_level,
                    ..env.settings
                };
                let grid =
                    crate::functional::bessel_rchi_grid(d, &env.omega, &f, None, 1.0, &finest);
                match (cell, grid) {
                    (Ok(c), Ok(g)) => {
                        let gap = (c.value.value() - g.value.value()).norm();
                        Outcome::within(
                            gap,
                            c.value.abs_err + g.value.abs_err,
                            fmt_c(c.value.value()),
                            fmt_c(g.value.value()),
                        )
                    }
                    (Err(e), _) | (_, Err(e)) => Outcome::error(e),
                }
            },
        ),
    ]
}
