use dimgroup::brattree::{build_tree_initial_hom, TreeCheck, TreeRule, WeightedTree};
use dimgroup::certify::{antifd_verdict, bifurcate, Bifurcation, Classification};
use dimgroup::discretelab::{
    antifd_m_check, build_critical, build_power_pairs, discrete_trace_witness, find_small_combination, is_discrete, min_nonzero_norm,
    real_span_dim, z_rank, approximate_in_span, FunctionGenerator, Functional, SymbolBasis, SymbolicVector,
};
use dimgroup::initial::{
    build_initial_hom, build_initial_hom_noninteractive, dense_range_verdict_noninteractive, BinomialSequence,
    DenseTargetGroup, DyadicVectorGroup, HomomorphismData,
};
use dimgroup::limitgroup::{Certificate, Truth, Verdict};
use dimgroup::num::{fmt_rational, parse_rational};
use dimgroup::upoly::UPoly;
use dimgroup::{LaurentPoly, LimitGroup, PolySequence};
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::SeedableRng;

use crate::args::{Cli, Command, LabScenario, SeqArgs, TargetArgs};
use crate::config::Settings;
use crate::report::*;
use crate::{CliError, Outcome, EXIT_FALSE, EXIT_TRUE, EXIT_UNKNOWN};

type Res<T> = Result<T, CliError>;

fn rational(s: &str) -> Res<BigRational> {
    Ok(parse_rational(s)?)
}

fn poly(s: &str) -> Res<LaurentPoly> {
    Ok(s.parse()?)
}

fn sequence(args: &SeqArgs, settings: &Settings) -> Res<PolySequence> {
    let args = match (&settings.sequence, args.is_empty()) {
        (Some(from_file), true) => from_file,
        (None, true) => return Err(CliError::usage("no sequence given (use --prefix/--period/--lacunary)")),
        _ => args,
    };
    if let Some(l) = &args.lacunary {
        let parts: Vec<i64> = l
            .split(',')
            .map(|p| p.trim().parse().map_err(|_| CliError::usage(format!("bad lacunary spec {l:?}"))))
            .collect::<Res<_>>()?;
        let [c, k, b] = parts[..] else {
            return Err(CliError::usage("lacunary spec is c,k,b"));
        };
        let base = u32::try_from(b).map_err(|_| CliError::usage("lacunary base out of range"))?;
        return Ok(PolySequence::lacunary(c, k, base)?);
    }
    let prefix = args.prefix.iter().map(|s| poly(s)).collect::<Res<Vec<_>>>()?;
    let period = args.period.iter().map(|s| poly(s)).collect::<Res<Vec<_>>>()?;
    Ok(if period.is_empty() { PolySequence::finite(prefix)? } else { PolySequence::periodic(prefix, period)? })
}

fn ints(v: &[BigInt]) -> Vec<String> {
    v.iter().map(BigInt::to_string).collect()
}

fn rats(v: &[BigRational]) -> Vec<String> {
    v.iter().map(fmt_rational).collect()
}

pub fn run(cli: &Cli, settings: &Settings) -> Res<Outcome> {
    match &cli.command {
        Command::Certify { seq, stages } => certify(&sequence(seq, settings)?, *stages),
        Command::Traces { seq, element, stage, points } => {
            traces(&sequence(seq, settings)?, element, *stage, points, settings)
        }
        Command::InitialHom { pairs, seq, target, stages, threshold, verify } => {
            initial_hom(pairs.as_deref(), seq, target, *stages, threshold, *verify, settings)
        }
        Command::Tree { weights, depth, export_dot, target } => tree(weights, *depth, *export_dot, target),
        Command::Lab { scenario } => lab(scenario),
        Command::Approx { coeffs, lo, hi, eps, height, degree } => approx(coeffs, lo, hi, eps, *height, *degree),
    }
}

fn certify(seq: &PolySequence, stages: usize) -> Res<Outcome> {
    let r = antifd_verdict(seq)?;
    let conditions = r
        .conditions()
        .into_iter()
        .map(|c| Condition {
            label: c.label.to_string(),
            holds: c.holds,
            exact: c.exact,
            holds_at: c.holds_at.clone(),
            fails_at: c.fails_at.clone(),
        })
        .collect();
    let bifurcation = match bifurcate(seq)? {
        Bifurcation::ProFd { contents, reduced } => {
            BifurcationReport::ProFd { contents: ints(&contents), reduced: reduced.to_string() }
        }
        Bifurcation::DiscreteFiniteRank { from_index, exact } => {
            BifurcationReport::DiscreteFiniteRank { from_index, exact }
        }
    };
    let n = seq.available().map_or(stages, |a| a.min(stages));
    let lg = LimitGroup::new(seq.clone());
    let (zero, infty) = (lg.trace_range_zero(n)?, lg.trace_range_infty(n)?);
    let endpoints = Endpoints {
        zero_multipliers: ints(&zero.multipliers),
        zero_dense: zero.dense.value,
        infty_multipliers: ints(&infty.multipliers),
        infty_dense: infty.dense.value,
        exact: zero.dense.exact && infty.dense.exact,
    };
    let (classification, code) = match r.classification {
        Classification::AntiFd => ("AntiFD", EXIT_TRUE),
        Classification::ProFd => ("ProFD", EXIT_FALSE),
        Classification::Inconclusive => ("Inconclusive", EXIT_UNKNOWN),
    };
    let report = CertifyReport {
        sequence: seq.to_string(),
        classification: classification.to_string(),
        prefix_relative: r.prefix_relative,
        conditions,
        faithful: r.faithful,
        bifurcation,
        endpoints,
        notes: r.notes.clone(),
    };
    Ok(Outcome { report: Report::Certify(report), code })
}

fn certificate(c: &Certificate) -> String {
    match c {
        Certificate::Stage { stage, product } => format!("nonnegative at stage {stage}: {product}"),
        Certificate::Multiplier { multiplier, stage, product } => {
            format!("{multiplier}·e − 1 nonnegative at stage {stage}: {product}")
        }
        Certificate::TerminalTrace { value } => format!("tau_0 = {}", fmt_rational(value)),
        Certificate::LeadingTrace { value } => format!("tau_inf = {}", fmt_rational(value)),
        Certificate::PointTrace { t, value } => format!("tau_{} = {}", fmt_rational(t), fmt_rational(value)),
        Certificate::ZeroElement => "zero element".to_string(),
        Certificate::MatrixStage { stage, vector } => format!("stage {stage}: ({})", rats(vector).join(", ")),
        Certificate::Cap { stage_cap, multiplier_cap } => match multiplier_cap {
            Some(m) => format!("caps reached: stage {stage_cap}, multiplier {m}"),
            None => format!("cap reached: stage {stage_cap}"),
        },
    }
}

fn verdict(v: &Verdict) -> VerdictReport {
    let value = match v.value {
        Truth::True => "true",
        Truth::False => "false",
        Truth::Unknown => "unknown",
    };
    VerdictReport { value: value.to_string(), certificate: certificate(&v.certificate) }
}

fn traces(seq: &PolySequence, element: &str, stage: usize, points: &[String], settings: &Settings) -> Res<Outcome> {
    let lg = LimitGroup::new(seq.clone());
    let e = lg.raw_element(poly(element)?, stage)?;
    let points = points
        .iter()
        .map(|t| {
            let t = rational(t)?;
            let v = lg.trace_point(&e, &t)?;
            Ok((fmt_rational(&t), fmt_rational(&v)))
        })
        .collect::<Res<Vec<_>>>()?;
    let positive = lg.is_positive(&e, settings.stage_cap)?;
    let unit = lg.is_order_unit(&e, &BigInt::from(settings.mult_cap), settings.stage_cap)?;
    let code = match unit.value {
        Truth::True => EXIT_TRUE,
        Truth::False => EXIT_FALSE,
        Truth::Unknown => EXIT_UNKNOWN,
    };
    let report = TracesReport {
        element: e.f.to_string(),
        stage,
        tau_zero: fmt_rational(&lg.trace_zero(&e)?),
        tau_infty: fmt_rational(&lg.trace_infty(&e)?),
        points,
        positive: verdict(&positive),
        order_unit: verdict(&unit),
    };
    Ok(Outcome { report: Report::Traces(report), code })
}

fn target(t: &TargetArgs) -> Res<(DyadicVectorGroup, Vec<BigRational>)> {
    let g = DyadicVectorGroup::new(t.dim, t.base)?;
    let u = if t.unit.is_empty() {
        g.unit()
    } else {
        g.element(t.unit.iter().map(|s| rational(s)).collect::<Res<_>>()?)?
    };
    if !g.is_order_unit(&u) {
        return Err(CliError::usage("the unit must have positive coordinates"));
    }
    Ok((g, u))
}

fn table_entries(table: &[Vec<(String, Vec<BigRational>)>]) -> Vec<TableEntry> {
    table
        .iter()
        .enumerate()
        .flat_map(|(stage, level)| {
            level.iter().map(move |(vertex, v)| TableEntry { stage, vertex: vertex.clone(), value: rats(v) })
        })
        .collect()
}

fn hom_table(h: &HomomorphismData<Vec<BigRational>>) -> Vec<TableEntry> {
    let rows: Vec<Vec<(String, Vec<BigRational>)>> =
        h.table.iter().map(|l| l.iter().map(|(j, v)| (j.to_string(), v.clone())).collect()).collect();
    table_entries(&rows)
}

fn parse_pairs(s: &str) -> Res<BinomialSequence> {
    let mut pairs = Vec::new();
    for part in s.split(';').filter(|p| !p.trim().is_empty()) {
        let nums: Vec<BigInt> = part
            .split(',')
            .map(|x| x.trim().parse().map_err(|_| CliError::usage(format!("bad pair {part:?}"))))
            .collect::<Res<_>>()?;
        let [a, b] = <[BigInt; 2]>::try_from(nums).map_err(|_| CliError::usage(format!("bad pair {part:?}")))?;
        pairs.push((a, b));
    }
    Ok(BinomialSequence::new(pairs)?)
}

fn initial_hom(
    pairs: Option<&str>,
    seq: &SeqArgs,
    t: &TargetArgs,
    stages: usize,
    threshold: &str,
    verify: bool,
    settings: &Settings,
) -> Res<Outcome> {
    let (g, u) = target(t)?;
    let target_name = format!("Z[1/{}]^{}", t.base, t.dim);
    let report = if let Some(p) = pairs {
        let bs = parse_pairs(p)?;
        let h = build_initial_hom(&bs, &g, &u, stages, &rational(threshold)?)?;
        let verified = verify.then(|| h.verify(&g).is_ok());
        HomReport {
            construction: "binomial".to_string(),
            sequence: h.entries.iter().map(LaurentPoly::to_string).collect(),
            target: target_name,
            unit: rats(&u),
            stages,
            d: Some(fmt_rational(&bs.d(stages)?)),
            dense_range: None,
            table: hom_table(&h),
            verified,
        }
    } else {
        let s = sequence(seq, settings)?;
        let h = build_initial_hom_noninteractive(&s, &g, &u, stages)?;
        let verified = verify.then(|| h.verify(&g).is_ok());
        HomReport {
            construction: "non-interactive".to_string(),
            sequence: h.entries.iter().map(LaurentPoly::to_string).collect(),
            target: target_name,
            unit: rats(&u),
            stages,
            d: None,
            dense_range: Some(dense_range_verdict_noninteractive(&s).value),
            table: hom_table(&h),
            verified,
        }
    };
    let code = if report.verified == Some(false) { EXIT_FALSE } else { EXIT_TRUE };
    Ok(Outcome { report: Report::InitialHom(report), code })
}

fn check_report(c: &TreeCheck) -> TreeCheckReport {
    TreeCheckReport {
        holds: c.verdict.value,
        exact: c.verdict.exact,
        witness: c.witness.map(|(l, i)| format!("{l}.{i}")),
        good_levels: c.good_levels.clone(),
    }
}

fn tree(weights: &[String], depth: usize, export_dot: bool, t: &TargetArgs) -> Res<Outcome> {
    let period = weights
        .iter()
        .map(|w| {
            w.split(',')
                .map(|x| x.trim().parse::<BigInt>().map_err(|_| CliError::usage(format!("bad weights {w:?}"))))
                .collect::<Res<Vec<_>>>()
        })
        .collect::<Res<Vec<_>>>()?;
    let rule = TreeRule::new(period)?;
    let tree = WeightedTree::from_rule(rule.clone(), depth);
    if export_dot {
        return Ok(Outcome { report: Report::Dot { dot: tree.export_dot(depth)? }, code: EXIT_TRUE });
    }
    let initial = tree.tree_initial_check(depth)?;
    let approx_div = tree.tree_approx_div_check(depth)?;
    let table = if initial.witness.is_none() {
        let (g, u) = target(t)?;
        let h = build_tree_initial_hom(&tree, &g, &u, depth)?;
        let rows: Vec<Vec<(String, Vec<BigRational>)>> = h
            .table
            .iter()
            .map(|l| l.iter().enumerate().map(|(i, v)| (i.to_string(), v.clone())).collect())
            .collect();
        table_entries(&rows)
    } else {
        Vec::new()
    };
    let code = if initial.verdict.value { EXIT_TRUE } else { EXIT_FALSE };
    let report = TreeReport {
        rule: rule.period.iter().map(|w| ints(w)).collect(),
        depth,
        initial: check_report(&initial),
        approx_div: check_report(&approx_div),
        table,
    };
    Ok(Outcome { report: Report::Tree(report), code })
}

/// With `delta` the numeric search only looks for combinations shorter than it.
fn lab_base(scenario: &str, gens: &[SymbolicVector], bound: i64, delta: Option<f64>) -> Res<LabReport> {
    let small = match delta {
        Some(d) => find_small_combination(gens, bound, d)?,
        None => min_nonzero_norm(gens, bound)?,
    };
    Ok(LabReport {
        scenario: scenario.to_string(),
        generators: gens.iter().map(SymbolicVector::render).collect(),
        z_rank: z_rank(gens)?,
        span_dim: real_span_dim(gens)?,
        discrete: is_discrete(gens)?,
        trace_generator: None,
        antifd: Vec::new(),
        numeric: Numeric {
            small_combination: small.as_ref().map(|c| c.coeffs.clone()),
            norm: small.map(|c| c.norm),
            search_bound: bound,
        },
    })
}

fn lab(s: &LabScenario) -> Res<Outcome> {
    let report = match s {
        LabScenario::Monomials { degree } => {
            let basis = SymbolBasis::plain();
            let n = degree + 1;
            let gens: Vec<SymbolicVector> = (0..n)
                .map(|i| {
                    let v: Vec<BigRational> =
                        (0..n).map(|j| BigRational::from_integer(BigInt::from(i32::from(i == j)))).collect();
                    SymbolicVector::rational(basis.clone(), &v)
                })
                .collect();
            lab_base("monomial coefficient vectors", &gens, 2, None)?
        }
        LabScenario::PowerPairs { n, bound, alpha, delta } => {
            let gens = build_power_pairs(*n, *alpha)?;
            let mut r = lab_base("power pairs (alpha^i, 2^-i)", &gens, *bound, Some(*delta))?;
            let w = discrete_trace_witness(&gens, &Functional::Coordinate(1))?;
            r.trace_generator = w.generator.map(|c| c.render(&gens[0].basis.names));
            r
        }
        LabScenario::Critical { m, budget, seed } => {
            let shadows = [std::f64::consts::PI - 3.0, std::f64::consts::E - 2.0, std::f64::consts::SQRT_2 - 1.0, 0.5772156649];
            if *m == 0 || *m > shadows.len() {
                return Err(CliError::usage(format!("m must be between 1 and {}", shadows.len())));
            }
            let model = build_critical(*m, &shadows[..*m])?;
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(*seed);
            let mut r = lab_base("critical group Z^m + theta Z", &model.gens, 6, None)?;
            for k in [*m, m + 1] {
                let sample = antifd_m_check(&model, k, *budget, &mut rng)?;
                r.antifd.push((k, sample.no_counterexample()));
            }
            r
        }
        LabScenario::Vectors { vecs, bound } => {
            let basis = SymbolBasis::plain();
            let gens = vecs
                .iter()
                .map(|v| {
                    let q = v.split(',').map(rational).collect::<Res<Vec<_>>>()?;
                    Ok(SymbolicVector::rational(basis.clone(), &q))
                })
                .collect::<Res<Vec<_>>>()?;
            lab_base("rational vectors", &gens, *bound, None)?
        }
    };
    let ok = match s {
        LabScenario::Critical { .. } => report.antifd == [(report.antifd[0].0, true), (report.antifd[1].0, false)],
        _ => report.discrete,
    };
    Ok(Outcome { report: Report::Lab(report), code: if ok { EXIT_TRUE } else { EXIT_FALSE } })
}

fn approx(coeffs: &[String], lo: &str, hi: &str, eps: &str, height: u64, degree: usize) -> Res<Outcome> {
    let c = coeffs.iter().map(|s| rational(s)).collect::<Res<Vec<_>>>()?;
    let target = UPoly::new(c);
    let (lo, hi, eps) = (rational(lo)?, rational(hi)?, rational(eps)?);
    let gens = FunctionGenerator::monomials(degree + 1, &lo, &hi)?;
    let a = approximate_in_span(&target, &gens, &eps, &BigInt::from(height), degree)?;
    let report = ApproxReport {
        target: target.to_string(),
        interval: (fmt_rational(&lo), fmt_rational(&hi)),
        coeffs: ints(&a.coeffs),
        poly: a.poly.to_string(),
        certified_error: fmt_rational(&a.certified),
        eps: fmt_rational(&eps),
    };
    Ok(Outcome { report: Report::Approx(report), code: EXIT_TRUE })
}
