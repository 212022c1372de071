//! End-to-end acceptance checks, one line of output per criterion.

use std::f64::consts::{FRAC_PI_4, PI, TAU};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use starnode::catalog::{self, Params, RowId};
use starnode::circle::{self, LocalType, SymbolSequence};
use starnode::contraction;
use starnode::portrait::{self, Direction, PortraitSpec, Seeds};
use starnode::rational::{frac, int};
use starnode::starfield::{self, Matrix2};
use starnode::{BinaryForm, Rational, StarField};

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn timed(limit: Duration, body: impl FnOnce() -> Outcome) -> Outcome {
    let start = Instant::now();
    let note = body()?;
    let took = start.elapsed();
    ensure(took < limit, || format!("took {took:.2?}, limit {limit:?}"))?;
    Ok(format!("{note} in {took:.2?}"))
}

fn rational(rng: &mut ChaCha8Rng, bound: i64) -> Rational {
    let d = rng.gen_range(1..=5);
    frac(rng.gen_range(-bound * d..=bound * d), d)
}

fn random_form(rng: &mut ChaCha8Rng, degree: usize, bound: i64) -> BinaryForm {
    BinaryForm::new((0..=degree).map(|_| rational(rng, bound)).collect())
}

/// `Q − k (x² + y²)^p X` for random `Q` and `k ∈ {0, …, 6}`.
fn random_field(rng: &mut ChaCha8Rng, degree: usize) -> StarField {
    loop {
        let k = int(rng.gen_range(0..=6));
        let r = BinaryForm::circle_power((degree - 1) / 2).scale(&k);
        let q1 = &random_form(rng, degree, 5) - &(&r * &BinaryForm::from_ints(&[1, 0]));
        let q2 = &random_form(rng, degree, 5) - &(&r * &BinaryForm::from_ints(&[0, 1]));
        if let Ok(f) = StarField::new(int(1), q1, q2) {
            return f;
        }
    }
}

fn random_contracting(rng: &mut ChaCha8Rng) -> StarField {
    loop {
        let degree = [3, 5, 7][rng.gen_range(0..3)];
        let f = random_field(rng, degree);
        if contraction::is_contracting(&f) {
            return f;
        }
    }
}

fn random_matrix(rng: &mut ChaCha8Rng) -> Matrix2 {
    loop {
        let m = starfield::matrix(rational(rng, 4), rational(rng, 4), rational(rng, 4), rational(rng, 4));
        if starfield::det(&m) != int(0) {
            return m;
        }
    }
}

fn built(id: RowId, p: &Params) -> Result<StarField, String> {
    catalog::build(id, p).map(|b| b.field).map_err(|e| format!("({id}) {p:?}: {e}"))
}

fn first_params(id: RowId) -> Params {
    catalog::sample_params(id).remove(0)
}

fn table_reproduction() -> Outcome {
    timed(Duration::from_secs(5), || {
        let mut points = 0;
        for id in RowId::ALL {
            let params = catalog::sample_params(id);
            ensure(params.len() >= 5, || format!("({id}) has {} sample points", params.len()))?;
            let want = catalog::expected(id);
            for p in params {
                let got = catalog::observe(&built(id, &p)?).map_err(|e| e.to_string())?;
                let same = want.sigma.equivalent(&got.sigma)
                    && want.infinite_equilibria == got.infinite_equilibria
                    && want.root_types == got.root_types
                    && want.stratum == got.stratum
                    && want.agrees_with(&got);
                ensure(same, || format!("({id}) {p:?}: expected {want:?}, observed {got:?}"))?;
                points += 1;
            }
        }
        Ok(format!("{points} parameter points over 10 rows"))
    })
}

fn cross_class_equivalences() -> Outcome {
    let keys: Vec<(RowId, Option<Vec<starnode::circle::Symbol>>, SymbolSequence)> = RowId::ALL
        .iter()
        .map(|&id| {
            let f = built(id, &first_params(id))?;
            let s = circle::symbol_sequence(&f.lq()).map_err(|e| e.to_string())?;
            Ok((id, s.canonical_key(), s))
        })
        .collect::<Result<_, String>>()?;
    let mut pairs = 0;
    for (i, a) in keys.iter().enumerate() {
        for b in &keys[i + 1..] {
            let same_key = a.1 == b.1 && matches!((&a.2, &b.2), (SymbolSequence::Infinity, SymbolSequence::Infinity) | (SymbolSequence::Empty, SymbolSequence::Empty) | (SymbolSequence::Cyclic(_), SymbolSequence::Cyclic(_)));
            let same_class = a.0.class() == b.0.class();
            ensure(same_key == same_class, || format!("({}) vs ({}): key equal {same_key}, class equal {same_class}", a.0, b.0))?;
            pairs += 1;
        }
    }
    for (a, b) in [(RowId::VI, RowId::II), (RowId::VIII, RowId::III), (RowId::IX, RowId::IV)] {
        let f = built(a, &first_params(a))?;
        let m = catalog::match_cubic(&f).map_err(|e| e.to_string())?;
        ensure(m.class == b, || format!("({a}) matched ({})", m.class))?;
    }
    Ok(format!("{pairs} pairs checked"))
}

fn worked_examples() -> Outcome {
    let seq = |s: &str| s.parse::<SymbolSequence>().unwrap();
    let s = circle::symbol_sequence(&catalog::three_symbol_form()).map_err(|e| e.to_string())?;
    ensure(s == seq("(2+),(1-),(1+)"), || format!("σ(x³y²(x − y)) = {s}"))?;
    let m = circle::symbol_sequence(&catalog::three_symbol_mirror()).map_err(|e| e.to_string())?;
    ensure(m.equivalent(&s), || format!("mirror σ = {m} not equivalent to {s}"))?;
    let six = circle::symbol_sequence(&catalog::six_symbol_form()).map_err(|e| e.to_string())?;
    let back = six.backward();
    ensure(six.symbols() != back.symbols(), || format!("σ = σ̄ = {six} as lists"))?;
    ensure(six.equivalent(&back), || format!("{six} not equivalent to {back}"))?;
    let mut checked = 3;
    for s in [&s, &m, &six] {
        ensure(s.is_admissible(), || format!("{s} is not admissible"))?;
    }
    for (id, p) in catalog::sweep(None) {
        let c = circle::classify_circle(&built(id, &p)?).map_err(|e| e.to_string())?;
        ensure(c.sigma.is_admissible(), || format!("({id}) σ = {} not admissible", c.sigma))?;
        checked += 1;
    }
    Ok(format!("{checked} sequences admissible"))
}

fn quintic_example() -> Outcome {
    let f = catalog::quintic_example(int(1)).map_err(|e| e.to_string())?;
    let inv = circle::equilibrium_inventory(&f).map_err(|e| e.to_string())?;
    ensure(inv.circle_equilibria.len() == 8, || format!("{} circle equilibria", inv.circle_equilibria.len()))?;
    let type_at = |q: f64| {
        inv.circle_equilibria
            .iter()
            .find(|e| (e.theta - q * FRAC_PI_4).abs() < 1e-9)
            .map(|e| e.local_type)
    };
    for (quarter, want) in [
        (0.0, LocalType::SaddleNode),
        (2.0, LocalType::SaddleNode),
        (4.0, LocalType::SaddleNode),
        (6.0, LocalType::SaddleNode),
        (1.0, LocalType::Sink),
        (5.0, LocalType::Sink),
        (3.0, LocalType::Saddle),
        (7.0, LocalType::Saddle),
    ] {
        let got = type_at(quarter);
        ensure(got == Some(want), || format!("at {quarter}·π/4: {got:?}, expected {want:?}"))?;
    }
    ensure(contraction::sufficient_determinant(&f.decompose()), || "sufficient test fails".into())?;
    ensure(contraction::is_contracting_exact(&f).0, || "exact test fails".into())?;
    Ok("8 equilibria, both contraction tests pass".into())
}

fn realization_round_trip() -> Outcome {
    timed(Duration::from_secs(60), || {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for i in 0..300 {
            let degree = [4, 6, 8][i % 3];
            let q = random_form(&mut rng, degree, 10);
            let r = starnode::realize::realize(&q, int(1)).map_err(|e| format!("{q}: {e}"))?;
            ensure(r.field.lq() == q, || format!("𝓛Q = {} for q = {q}", r.field.lq()))?;
            ensure(contraction::is_contracting_exact(&r.field).0, || format!("realization of {q} does not contract"))?;
        }
        Ok("300 of 300 forms".into())
    })
}

fn contraction_oracle() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut contracting = 0;
    for _ in 0..500 {
        let f = random_field(&mut rng, 3);
        let mq = f.mq();
        let samples: Vec<f64> = (0..10_000)
            .map(|k| {
                let t = TAU * k as f64 / 10_000.0;
                mq.eval_f64(t.cos(), t.sin())
            })
            .collect();
        let exact = contraction::is_contracting_exact(&f).0;
        let oracle = samples.iter().all(|&v| v < 0.0);
        ensure(oracle || !exact, || format!("oracle finds 𝓜Q ≥ 0 but exact says contracting: {f:?}"))?;
        ensure(!exact || oracle, || format!("exact contracting with a non-negative sample: {f:?}"))?;
        contracting += usize::from(exact);
    }
    let mut mismatches = 0;
    for _ in 0..500 {
        let q: Vec<Rational> = (0..4).map(|_| rational(&mut rng, 6)).collect();
        let Ok(f) = contraction::z2z2_field(&q[0], &q[1], &q[2], &q[3], int(1)) else {
            continue;
        };
        if contraction::z2z2_exact(&q[0], &q[1], &q[2], &q[3]) != contraction::is_contracting(&f) {
            mismatches += 1;
        }
    }
    ensure(mismatches == 0, || format!("{mismatches} equivariant mismatches"))?;
    Ok(format!("{contracting}/500 cubics contracting, 0 equivariant mismatches"))
}

fn invariance_suite() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut reversing = 0;
    let mut hyperbolic = 0;
    for _ in 0..200 {
        let f = random_contracting(&mut rng);
        let sigma = circle::symbol_sequence(&f.lq()).map_err(|e| e.to_string())?;
        let l = random_matrix(&mut rng);
        let g = f.linear_change(&l).map_err(|e| e.to_string())?;
        let tau = circle::symbol_sequence(&g.lq()).map_err(|e| e.to_string())?;
        let want = if starfield::det(&l) > int(0) {
            sigma.clone()
        } else {
            reversing += 1;
            sigma.backward()
        };
        ensure(tau.equivalent(&want) && tau.canonical_key() == want.canonical_key(), || {
            format!("σ = {sigma} became {tau} under {l:?}")
        })?;
        let c = frac(rng.gen_range(1..=20), rng.gen_range(1..=5));
        let h = f.scale_nonlinearity(&c).map_err(|e| e.to_string())?;
        let scaled = circle::symbol_sequence(&h.lq()).map_err(|e| e.to_string())?;
        ensure(scaled == sigma, || format!("scaling by {c} changed {sigma} to {scaled}"))?;
        if sigma != SymbolSequence::Infinity {
            let inv = circle::equilibrium_inventory(&f).map_err(|e| e.to_string())?;
            if inv.hyperbolic_flags().iter().all(|&b| b) {
                hyperbolic += 1;
                let n = inv.circle_equilibria.len();
                ensure(n % 4 == 0, || format!("hyperbolic inventory with {n} equilibria"))?;
            }
        }
    }
    Ok(format!("200 fields, {reversing} orientation-reversing, {hyperbolic} hyperbolic inventories"))
}

fn portrait_numerics() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut seeds_checked = 0;
    for (id, params) in [(RowId::II, "mu=0,lambda=1"), (RowId::VII, "lambda=1"), (RowId::X, "lambda=1")] {
        let f = built(id, &Params::parse(params).map_err(|e| e.to_string())?)?;
        let seeds: Vec<(f64, f64)> = (0..20)
            .map(|_| {
                let t = rng.gen_range(0.0..TAU);
                let r = 10f64.powf(rng.gen_range(-1.5..1.0));
                (r * t.cos(), r * t.sin())
            })
            .collect();
        let spec = PortraitSpec {
            seeds: Seeds::Points(seeds.clone()),
            both_directions: false,
            ..PortraitSpec::default()
        };
        let p = portrait::portrait(&f, &spec).map_err(|e| e.to_string())?;
        ensure(p.circle.max_residual() < 1e-6, || format!("({id}) trace residual {}", p.circle.max_residual()))?;
        for t in p.trajectories.iter().filter(|t| t.direction == Direction::Forward) {
            let d = t.circle_distance.unwrap_or(f64::INFINITY);
            ensure(!t.termination.is_truncated() && d < 1e-6, || {
                format!("({id}) seed {:?}: {:?}, residual {d:e}", t.seed, t.termination)
            })?;
            seeds_checked += 1;
        }
        let mut drawn = p.rendered.infinity_angles();
        drawn.sort_by(f64::total_cmp);
        let mut want: Vec<f64> = match f.lq().projective_roots() {
            Ok(r) => r.angles().iter().flat_map(|&t| [t, t + PI]).collect(),
            Err(_) => Vec::new(),
        };
        want.sort_by(f64::total_cmp);
        ensure(
            drawn.len() == want.len() && drawn.iter().zip(&want).all(|(a, b)| (a - b).abs() < 1e-9),
            || format!("({id}) boundary glyphs {drawn:?} vs roots {want:?}"),
        )?;
        let again = portrait::portrait(&f, &spec).map_err(|e| e.to_string())?;
        ensure(again.svg() == p.svg(), || format!("({id}) SVG differs between runs"))?;
    }
    Ok(format!("{seeds_checked} seeds within 1e-6, SVG stable"))
}

fn k_audit() -> Outcome {
    let mut failures = Vec::new();
    let mut audited = 0;
    for (id, p) in catalog::sweep(None) {
        let Some(a) = catalog::audit_k(id, &p).map_err(|e| e.to_string())? else {
            continue;
        };
        audited += 1;
        if !a.holds() {
            failures.push(format!(
                "({id}) μ={} K²={}: corners {}, {} (second {}, third {})",
                p.mu, a.k_squared, a.corners.0, a.corners.1, a.second, a.third
            ));
        }
    }
    let (interval, _) = catalog::audit_viii(&int(2));
    if !interval {
        failures.push("(VIII) K = 2 outside (0, 4)".into());
    }
    if failures.is_empty() {
        Ok(format!("{audited} listed K values hold, (VIII) K = 2 in (0, 4)"))
    } else {
        failures.dedup();
        Err(format!("{} of {audited} fail: {}", failures.len(), failures.join("; ")))
    }
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("1 table reproduction", table_reproduction),
        ("2 cross-class equivalences", cross_class_equivalences),
        ("3 worked symbol sequences", worked_examples),
        ("4 degree-5 example", quintic_example),
        ("5 realization round trip", realization_round_trip),
        ("6 contraction oracle", contraction_oracle),
        ("7 invariance suite", invariance_suite),
        ("8 portrait numerics", portrait_numerics),
        ("9 K audit", k_audit),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        match run() {
            Ok(note) => println!("PASS {name}: {note}"),
            Err(why) => {
                failed += 1;
                println!("FAIL {name}: {why}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
