use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use shufflealg::arith::{int, rat, EvalContext, Kernel, Mode, ParamRat, Rational};
use shufflealg::combinatorics::{
    catalan, dyck_from_word, enumerate_admissible, enumerate_dyck, hilbert_table, word_from_dyck, HilbertMode,
};
use shufflealg::grid::GridSubset;
use shufflealg::locus::{
    point_is_common_zero, subset_to_point, torsion_vanishing_smoke, verify_multiplicity, SampleConfig,
};
use shufflealg::rewrite::{enumerate_vbasis, relation_combo};
use shufflealg::shuffle::{random_univariate, Normalization, Point, SElement};
use shufflealg::Error;

use crate::report::{Failure, Report};
use crate::{Suite, VerifyArgs, ENUMERATION_BOUND};

/// Largest `--range` for the symbolic relations suite.
const RANGE_BOUND: i32 = 6;

fn eval_failure(e: Error) -> Failure {
    Failure::Eval(e.to_string())
}

pub fn run(args: VerifyArgs, ctx: &EvalContext, seed: u64, norm: Normalization) -> Result<Report, Failure> {
    let rep = match args.suite {
        Suite::Relations => relations(args.range, ctx, seed, norm)?,
        Suite::Associativity => associativity(args.samples.unwrap_or(25), ctx, seed, norm)?,
        Suite::ZeroLocus => zero_locus(args.n_max.unwrap_or(5), args.samples.unwrap_or(50), ctx, seed)?,
        Suite::Multiplicity => multiplicity(&args.subset, args.samples.unwrap_or(20), ctx, seed)?,
        Suite::Bijection => bijection(args.n, ctx, seed)?,
        Suite::Torsion => torsion(args.n_max.unwrap_or(6), args.samples.unwrap_or(20), ctx, seed)?,
    };
    Ok(rep.finish())
}

fn product(f: &SElement<ParamRat>, g: &SElement<ParamRat>, norm: Normalization) -> Result<SElement<ParamRat>, Failure> {
    f.product(g, &Kernel::symbolic(), norm).map_err(eval_failure)
}

fn relations(range: i32, ctx: &EvalContext, seed: u64, norm: Normalization) -> Result<Report, Failure> {
    if !(0..=RANGE_BOUND).contains(&range) {
        return Err(Failure::Usage(format!("--range must be between 0 and {RANGE_BOUND}")));
    }
    let mut rep = Report::new("relations", seed, ctx);
    for m in -range..=range {
        for n in -range..=range {
            let mut total = SElement::zero(2);
            for (w, c) in relation_combo(m, n).terms() {
                let [a, b] = w.letters() else { unreachable!("relations have length 2") };
                let term = product(&SElement::power(*a), &SElement::power(*b), norm)?.scale(c);
                total = total.add(&term).map_err(eval_failure)?;
            }
            let detail = if total.is_zero() { "zero".to_string() } else { total.to_string() };
            rep.check(format!("relation({m:+},{n:+})"), total.is_zero(), detail);
        }
    }
    rep.note("instances", (2 * range + 1).pow(2));
    Ok(rep)
}

fn s1(rng: &mut ChaCha8Rng) -> SElement<ParamRat> {
    let terms: Vec<(i32, ParamRat)> =
        random_univariate((-2, 2), rng).into_iter().map(|(k, c)| (k, ParamRat::from(c))).collect();
    SElement::univariate(&terms)
}

fn associativity(samples: usize, ctx: &EvalContext, seed: u64, norm: Normalization) -> Result<Report, Failure> {
    let mut rep = Report::new("associativity", seed, ctx);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for i in 0..samples {
        let (f, g, h) = (s1(&mut rng), s1(&mut rng), s1(&mut rng));
        let left = product(&product(&f, &g, norm)?, &h, norm)?;
        let right = product(&f, &product(&g, &h, norm)?, norm)?;
        let ok = left == right;
        let detail = format!("F = {f}; G = {g}; H = {h}");
        rep.check(format!("triple-{i:03}"), ok, if ok { "equal".into() } else { detail });
    }
    rep.note("triples", samples);
    Ok(rep)
}

fn zero_locus(n_max: usize, samples: usize, ctx: &EvalContext, seed: u64) -> Result<Report, Failure> {
    if n_max > ENUMERATION_BOUND {
        return Err(Failure::Usage(format!("--n-max must be at most {ENUMERATION_BOUND}")));
    }
    let mut rep = Report::new("zero-locus", seed, ctx);
    for n in 1..=n_max {
        let mut failures = Vec::new();
        let subsets = enumerate_admissible(n, None);
        for (s, _) in &subsets {
            let p = subset_to_point(s, ctx).map_err(eval_failure)?;
            if !point_is_common_zero(&p, ctx).map_err(eval_failure)? {
                failures.push(s.to_string());
            }
        }
        let detail = match failures.first() {
            None => format!("{} admissible points", subsets.len()),
            Some(s) => format!("{} of {} points not a common zero, e.g. {s}", failures.len(), subsets.len()),
        };
        rep.check(format!("admissible-{n:02}"), failures.is_empty(), detail);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut tested = 0;
    while tested < samples {
        let n = rng.gen_range(2..=6);
        let coords: Vec<Rational> = (0..n).map(|_| rat(rng.gen_range(-50..=50), rng.gen_range(1..=13))).collect();
        let Ok(p) = Point::new(coords) else { continue };
        if p.check_distinct().is_err() {
            continue;
        }
        let zero = point_is_common_zero(&p, ctx).map_err(eval_failure)?;
        rep.check(
            format!("random-{tested:03}"),
            !zero,
            if zero { format!("{p} is a common zero") } else { format!("{p}: some summand nonzero") },
        );
        tested += 1;
    }
    Ok(rep)
}

fn multiplicity(subset: &str, samples: usize, ctx: &EvalContext, seed: u64) -> Result<Report, Failure> {
    let s = GridSubset::from_json_str(subset).map_err(|e| Failure::Usage(e.to_string()))?;
    let mut rep = Report::new("multiplicity", seed, ctx);
    rep.note("subset", s.to_json());
    if !s.is_admissible() {
        rep.check("admissible", false, "some vertex has no parent in the subset (or the root is missing)");
        return Ok(rep);
    }
    let m = verify_multiplicity(&s, ctx, SampleConfig::new(samples, seed)).map_err(eval_failure)?;
    for c in &m.checks {
        let detail = match &c.witness {
            None => c.relation.clone(),
            Some((sample, value)) => format!("{} is {value} on sample {sample}", c.relation),
        };
        rep.check(c.id.clone(), c.passed, detail);
    }
    let certified = m.passed();
    if m.k <= 2 {
        rep.check("count", certified, format!("{} of {} conditions", m.conditions_verified, m.expected));
    }
    rep.note("point", &m.point);
    rep.note("k", m.k);
    rep.note("expected", m.expected);
    rep.note("conditions", m.conditions_verified);
    rep.note("certified", certified);
    rep.note("samples", samples);
    Ok(rep)
}

fn bijection(n: usize, ctx: &EvalContext, seed: u64) -> Result<Report, Failure> {
    if n > ENUMERATION_BOUND {
        return Err(Failure::Usage(format!("--n must be at most {ENUMERATION_BOUND}")));
    }
    let mut rep = Report::new("bijection", seed, ctx);
    let words = enumerate_vbasis(n);
    let paths = enumerate_dyck(n);
    let mut forward_ok = 0;
    let mut image = Vec::with_capacity(words.len());
    for w in &words {
        let p = dyck_from_word(w).map_err(eval_failure)?;
        if &word_from_dyck(&p) == w {
            forward_ok += 1;
        }
        image.push(p);
    }
    let backward_ok = paths
        .iter()
        .filter(|p| dyck_from_word(&word_from_dyck(p)).ok().as_ref() == Some(*p))
        .count();
    image.sort();
    image.dedup();
    let expected = catalan(n as u32);
    rep.check("count", words.len() as u128 == expected, format!("{} words, Catalan({n}) = {expected}", words.len()));
    rep.check("injective", image.len() == words.len(), format!("{} distinct paths", image.len()));
    rep.check("path-to-word-to-path", backward_ok == paths.len(), format!("{backward_ok} of {} paths", paths.len()));
    rep.check("word-to-path-to-word", forward_ok == words.len(), format!("{forward_ok} of {} words", words.len()));
    rep.note("round_trips", forward_ok);
    rep.note("n", n);
    Ok(rep)
}

fn torsion(n_max: usize, samples: usize, ctx: &EvalContext, seed: u64) -> Result<Report, Failure> {
    let Mode::Torsion { a, b } = ctx.mode else {
        return Err(Failure::Usage("the torsion suite needs --mode torsion".into()));
    };
    if n_max > ENUMERATION_BOUND {
        return Err(Failure::Usage(format!("--n-max must be at most {ENUMERATION_BOUND}")));
    }
    let mut rep = Report::new("torsion", seed, ctx);
    for (i, alpha) in [int(1), int(3), rat(7, 2)].iter().enumerate() {
        let t = torsion_vanishing_smoke(ctx, alpha, samples, seed + i as u64).map_err(eval_failure)?;
        let detail = match t.nonzero.first() {
            None => format!("{samples} products vanish at ({})", t.point.join(", ")),
            Some((k, v)) => format!("product {k} is {v} at ({})", t.point.join(", ")),
        };
        rep.check(format!("vanishing-alpha={alpha}"), t.passed(), detail);
    }
    let generic = hilbert_table(n_max, HilbertMode::Generic).dims;
    let tors = hilbert_table(n_max, HilbertMode::Torsion { a, b }).dims;
    let reach = (a + b) as usize;
    let bounded = tors.iter().zip(&generic).all(|(t, g)| t <= g);
    let equal_below = tors.iter().zip(&generic).take(reach.min(n_max) + 1).all(|(t, g)| t == g);
    let smaller = tors.iter().zip(&generic).any(|(t, g)| t < g);
    rep.check("dims-bounded", bounded, format!("torsion {tors:?}, generic {generic:?}"));
    rep.check("dims-equal-below-region", equal_below, format!("n <= {}", reach.min(n_max)));
    rep.check("dims-truncated", smaller || n_max <= reach, format!("strictly smaller for some n <= {n_max}"));
    rep.note("torsion_dims", &tors);
    rep.note("generic_dims", &generic);
    Ok(rep)
}
