//! The ten acceptance criteria, run in order with one PASS/FAIL line each.

mod oracle;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::time::{Duration, Instant};

use charvar::hilb::{self, Cap, CohaOperator, Flavor, LaurentPole};
use charvar::hlv::{self, fq_point_count, mixed_hodge};
use charvar::markov::{self, Mat2, SL2Tuple, Strategy, TraceCoordinates, TraceReducer, TraceRing};
use charvar::multiform;
use charvar::symfunc::modified_macdonald;
use charvar::{Partition, QtScalar};
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use oracle::{
    modified_macdonald_gram_schmidt, modified_macdonald_gram_schmidt_at, molien_dim, partition,
    partitions, rank_two_closed_form,
};

type Check = Result<(), String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn one_minus(x: QtScalar) -> QtScalar {
    &QtScalar::one() - &x
}

fn markov_mu() -> Vec<Partition> {
    vec![partition(&[1, 1]); 4]
}

fn c1_markov_mh() -> Check {
    let out = Command::new(env!("CARGO_BIN_EXE_charvar"))
        .args([
            "mh",
            "--genus",
            "0",
            "--punctures",
            "4",
            "--mu",
            "1,1;1,1;1,1;1,1",
        ])
        .output()
        .map_err(|e| e.to_string())?;
    let stdout = String::from_utf8_lossy(&out.stdout);
    ensure(
        out.status.code() == Some(0) && stdout == "q + t + 4\n",
        || format!("exit {:?}, output {stdout:?}", out.status.code()),
    )
}

fn c2_point_count() -> Check {
    let r = mixed_hodge(0, &markov_mu(), 2).map_err(|e| e.to_string())?;
    let pc = fq_point_count(&r.mh, 2).map_err(|e| e.to_string())?;
    let want = &(&QtScalar::qt_pow(2, 0) + &QtScalar::qt_pow(1, 0).scale_int(4)) + &QtScalar::one();
    ensure(QtScalar::from_laurent(pc.clone()) == want, || {
        format!("got {pc}")
    })
}

fn c3_twisted() -> Check {
    let (q, t, one) = (QtScalar::q(), QtScalar::t(), QtScalar::one());
    for k in 0..=4u32 {
        let o = hlv::omega_twisted(k, 2);
        let sign = if k % 2 == 0 {
            one.clone()
        } else {
            -one.clone()
        };
        let z1 = &sign / &(&one_minus(q.clone()) * &one_minus(t.clone()));
        ensure(o.scalar_coeff(1).unwrap() == z1, || {
            format!("z^1 at k = {k}")
        })?;
        let num = &(&q.pow(k + 1) * &one_minus(t.pow(2))) - &(&t.pow(k + 1) * &one_minus(q.pow(2)));
        let den = [
            &q - &t,
            one_minus(q.clone()),
            one_minus(q.pow(2)),
            one_minus(t.clone()),
            one_minus(t.pow(2)),
        ]
        .iter()
        .fold(one.clone(), |a, b| &a * b);
        ensure(o.scalar_coeff(2).unwrap() == &num / &den, || {
            format!("z^2 at k = {k}")
        })?;
    }
    let base = &one / &(&one_minus(q.clone()) * &one_minus(t.clone()));
    for k in 0..=5i64 {
        let l = hlv::plog_twisted(k as u32, 2);
        let mut sum = QtScalar::zero();
        for i in 0..=k {
            for j in 0..=k - i {
                if i + j <= k - 2 && (k - i - j) % 2 == 0 {
                    sum = &sum + &QtScalar::qt_pow(i, j);
                }
            }
        }
        ensure(l.scalar_coeff(2).unwrap() == -(&base * &sum), || {
            format!("pLog z^2 at k = {k}")
        })?;
    }
    Ok(())
}

/// Exact integers with overflow treated as an error.
#[derive(Clone, Debug, PartialEq)]
struct I(i128);

impl TraceRing for I {
    fn from_i64(c: i64, _: &Self) -> Self {
        I(c as i128)
    }
    fn add(&self, o: &Self) -> Self {
        I(self.0.checked_add(o.0).expect("overflow"))
    }
    fn sub(&self, o: &Self) -> Self {
        I(self.0.checked_sub(o.0).expect("overflow"))
    }
    fn mul(&self, o: &Self) -> Self {
        I(self.0.checked_mul(o.0).expect("overflow"))
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
}

fn to_int(m: &Mat2<BigRational>) -> Mat2<I> {
    let c = |x: &BigRational| {
        assert!(x.is_integer());
        I(x.to_integer().to_i128().unwrap())
    };
    Mat2::new(c(&m.e[0][0]), c(&m.e[0][1]), c(&m.e[1][0]), c(&m.e[1][1]))
}

/// Depth-first over all words up to `depth`, carrying the reduced form and
/// the matrix of the prefix; returns the number of words checked.
fn walk(
    r: &TraceReducer<I>,
    mats: &[Mat2<I>; 4],
    inv: &[Mat2<I>; 4],
    v: &[I],
    m: &Mat2<I>,
    depth: usize,
) -> Result<usize, String> {
    if r.trace_of(v) != m.trace() {
        return Err(format!(
            "trace mismatch: {:?} vs {:?}",
            r.trace_of(v),
            m.trace()
        ));
    }
    let mut count = 1;
    if depth == 0 {
        return Ok(count);
    }
    for l in [1i8, 2, 3, 4, -1, -2, -3, -4] {
        let i = l.unsigned_abs() as usize - 1;
        let m2 = m.mul(if l > 0 { &mats[i] } else { &inv[i] });
        count += walk(r, mats, inv, &r.step(v, l), &m2, depth - 1)?;
    }
    Ok(count)
}

fn c4_markov() -> Check {
    for seed in 0..200 {
        let t = markov::sample_tuple(seed);
        ensure(t.is_valid(), || format!("invalid tuple for seed {seed}"))?;
        let lhs = markov::markov_lhs(&t.trace_coordinates());
        ensure(Zero::is_zero(&lhs), || {
            format!("Markov residual {lhs} for seed {seed}")
        })?;
    }
    ensure(markov::symbolic_markov_residual().is_zero(), || {
        "symbolic residual".into()
    })?;
    let mut words = 0;
    for seed in 0..20 {
        let t = markov::sample_integral_tuple(1000 + seed);
        let mats: [Mat2<I>; 4] = std::array::from_fn(|i| to_int(&t.m[i]));
        let inv: [Mat2<I>; 4] = std::array::from_fn(|i| mats[i].adjugate());
        let it = SL2Tuple { m: mats.clone() };
        ensure(it.is_valid(), || "integral tuple".into())?;
        let r = TraceReducer::new(it.trace_coordinates(), Strategy::Leftmost)
            .map_err(|e| e.to_string())?;
        words = walk(&r, &mats, &inv, &r.identity(), &Mat2::identity(&I(0)), 6)?;
    }
    ensure(
        words == (0..=6).map(|d| 8usize.pow(d)).sum::<usize>(),
        || format!("{words} words"),
    )?;
    // The symbolic reducer agrees with the numeric one on sampled points.
    let w = markov::TraceWord::parse("1,-4,2,3,-1,4").unwrap();
    let p = markov::reduce_trace_word(&w).map_err(|e| e.to_string())?;
    for seed in 0..20 {
        let t = markov::sample_tuple(seed);
        let direct = t.evaluate(&w).trace();
        ensure(
            markov::evaluate(&p, &t.trace_coordinates().values()) == direct,
            || format!("symbolic word at seed {seed}"),
        )?;
        let numeric = TraceReducer::<BigRational>::new(t.trace_coordinates(), Strategy::Rightmost)
            .unwrap()
            .trace(&w);
        ensure(numeric == direct, || "numeric reducer".into())?;
    }
    let _: TraceCoordinates<BigRational> = markov::sample_tuple(0).trace_coordinates();
    Ok(())
}

fn c5_module_oracles() -> Check {
    let cap = Cap::default();
    for n in 1..=3usize {
        for (k, sign) in [(0u32, true), (1, false)] {
            let table = hilb::hilbert_series(n, k, cap);
            for &(a, b, d) in &table.entries {
                let want = molien_dim(n as u32, sign, a, b as i64);
                ensure(d == want, || {
                    format!("n = {n}, k = {k}, ({a}, {b}): {d} vs {want}")
                })?;
            }
        }
    }
    for k in 0..=4u32 {
        let table = hilb::hilbert_series(2, k, cap);
        for &(a, b, d) in &table.entries {
            let want = rank_two_closed_form(k, a, b as i64);
            ensure(d == want, || {
                format!("n = 2, k = {k}, ({a}, {b}): {d} vs {want}")
            })?;
        }
    }
    Ok(())
}

fn c6_conjecture() -> Check {
    let mut failures = Vec::new();
    for n in 1..=3 {
        for k in 0..=3 {
            let r = hilb::conjecture_check(n, k, Cap::default()).map_err(|e| e.to_string())?;
            if !r.passed() {
                failures.push(format!("n = {n}, k = {k}: {:?}", r.mismatches));
            }
        }
    }
    ensure(failures.is_empty(), || failures.join("; "))
}

fn c7_coha() -> Check {
    for n in 1..=2 {
        for k in 0..=3 {
            let r = hilb::coha_bracket_check(n, k, 3, Cap::new(4, 4));
            ensure(r.passed() && r.evaluations > 0, || {
                format!("n = {n}, k = {k}: {:?}", r.violations.first())
            })?;
            for d in Cap::new(3, 3).bidegrees(n, k) {
                for f in hilb::module_component(n, k, d).basis {
                    let g = hilb::coha_apply(CohaOperator::new(0, 0, Flavor::Pt), &f);
                    let want: LaurentPole = f.scale(&BigRational::from_integer((n as i64).into()));
                    ensure(g == want, || format!("T00 on {f}"))?;
                }
            }
        }
    }
    Ok(())
}

fn c8_kunneth() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut trials = 0;
    for n in 1..=2 {
        for g in 1..=2 {
            for _ in 0..5 {
                let f = multiform::random_invariant(n, 3, &mut rng);
                let h = multiform::random_invariant(n, 3, &mut rng);
                let w = multiform::random_multiform(n, g, 3, &mut rng);
                let r =
                    multiform::kunneth_identity_check(&f, &h, &[w]).map_err(|e| e.to_string())?;
                ensure(r.passed(), || format!("{r:?}"))?;
                trials += 1;
            }
        }
    }
    ensure(trials == 20, || format!("{trials} trials"))
}

fn multinomial(nu: &[u32]) -> i64 {
    let f = |m: u32| (1..=m as i64).product::<i64>();
    f(nu.iter().sum()) / nu.iter().map(|&x| f(x)).product::<i64>()
}

fn c9_macdonald() -> Check {
    for n in 1..=3 {
        for mu in partitions(n) {
            let h = modified_macdonald(&partition(&mu));
            for (nu, c) in modified_macdonald_gram_schmidt(&mu) {
                ensure(h.coeff(&[partition(&nu)]) == c, || {
                    format!("mu = {mu:?}, nu = {nu:?}")
                })?;
            }
        }
    }
    // Coefficients are polynomials of degree <= n(n-1)/2 in q and in t, so
    // agreement on a grid of that size is equality. q < 1 < t keeps the
    // scalar product positive definite.
    for n in 4..=5u32 {
        let d = (n * (n - 1) / 2) as i64;
        for mu in partitions(n) {
            let h = modified_macdonald(&partition(&mu));
            for nu in partitions(n) {
                let c = h.coeff(&[partition(&nu)]);
                let poly = c
                    .as_polynomial()
                    .ok_or_else(|| format!("mu = {mu:?}: not a polynomial"))?;
                let (lo, hi) = (poly.min_exponents(), poly.max_exponents());
                ensure(
                    lo.0 >= 0 && lo.1 >= 0 && hi.0 <= 2 * d && hi.1 <= 2 * d,
                    || format!("degrees of {c}"),
                )?;
            }
            for qi in 0..=d {
                for ti in 0..=d {
                    let (q0, t0) = (
                        BigRational::new(1.into(), (qi + 2).into()),
                        BigRational::from_integer((ti + 2).into()),
                    );
                    let (qs, ts) = (
                        QtScalar::from_rational(q0.clone()),
                        QtScalar::from_rational(t0.clone()),
                    );
                    for (nu, v) in modified_macdonald_gram_schmidt_at(&mu, &q0, &t0) {
                        let c = h
                            .coeff(&[partition(&nu)])
                            .substitute(&qs, &ts)
                            .map_err(|e| e.to_string())?;
                        ensure(c == QtScalar::from_rational(v), || {
                            format!("mu = {mu:?}, nu = {nu:?} at ({q0}, {t0})")
                        })?;
                    }
                }
            }
        }
    }
    let one = QtScalar::one();
    for n in 1..=6 {
        for mu in partitions(n) {
            let p = partition(&mu);
            let h = modified_macdonald(&p);
            let hc = modified_macdonald(&p.conjugate());
            for nu in partitions(n) {
                let c = h.coeff(&[partition(&nu)]);
                let at_one = c.substitute(&one, &one).map_err(|e| e.to_string())?;
                ensure(at_one == QtScalar::from_int(multinomial(&nu)), || {
                    format!("q = t = 1 at mu = {mu:?}, nu = {nu:?}")
                })?;
                ensure(c.swap_qt() == hc.coeff(&[partition(&nu)]), || {
                    format!("conjugation at mu = {mu:?}, nu = {nu:?}")
                })?;
            }
        }
    }
    Ok(())
}

fn tuples(n: u32, k: usize) -> Vec<Vec<Partition>> {
    let ps: Vec<Partition> = partitions(n).iter().map(|p| partition(p)).collect();
    let mut out = vec![vec![]];
    for _ in 0..k {
        out = out
            .into_iter()
            .flat_map(|t: Vec<Partition>| {
                ps.iter().map(move |p| {
                    let mut t = t.clone();
                    t.push(p.clone());
                    t
                })
            })
            .collect();
    }
    out
}

fn c10_polynomiality() -> Check {
    for g in 0..=1 {
        for k in 1..=3 {
            for n in 1..=3 {
                for mu in tuples(n, k) {
                    let r = mixed_hodge(g, &mu, 3).map_err(|e| e.to_string())?;
                    ensure(r.is_polynomial, || {
                        format!("g = {g}, mu = {mu:?}: {}", r.mh)
                    })?;
                }
            }
        }
    }
    Ok(())
}

type Criterion = (&'static str, fn() -> Check, Duration);

fn main() {
    let criteria: [Criterion; 10] = [
        (
            "Markov MH reproduction",
            c1_markov_mh,
            Duration::from_secs(30),
        ),
        ("point count", c2_point_count, Duration::from_secs(5)),
        ("twisted series", c3_twisted, Duration::from_secs(10)),
        (
            "Markov randomized suite",
            c4_markov,
            Duration::from_secs(60),
        ),
        (
            "module oracles",
            c5_module_oracles,
            Duration::from_secs(120),
        ),
        (
            "conjecture desk-scale check",
            c6_conjecture,
            Duration::from_secs(600),
        ),
        ("COHA property suite", c7_coha, Duration::from_secs(60)),
        ("Kunneth identity", c8_kunneth, Duration::from_secs(30)),
        (
            "Macdonald cross-validation",
            c9_macdonald,
            Duration::from_secs(120),
        ),
        ("polynomiality", c10_polynomiality, Duration::from_secs(600)),
    ];
    let mut failed = 0;
    for (i, (name, check, budget)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|e| {
            Err(e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into()))
        });
        let elapsed = start.elapsed();
        let result = result.and_then(|()| {
            ensure(elapsed <= *budget, || {
                format!("took {elapsed:.1?}, budget {budget:?}")
            })
        });
        match result {
            Ok(()) => println!("criterion {:>2} {name}: PASS ({elapsed:.1?})", i + 1),
            Err(e) => {
                failed += 1;
                println!("criterion {:>2} {name}: FAIL ({elapsed:.1?}): {e}", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
