use std::io::Write;
use std::path::Path;
use std::str::FromStr;

use num_bigint::BigInt;
use serde_json::Value;
use systole_core::bounds::{
    bracket_from_power_traces, degree_bound, exact_length_n2, growth_constant, hyp_bracket_for,
    volume_growth_constant, BoundsError, ConstantsProfile, Family, KcType,
};
use systole_core::enumerate::{partitioned_run, write_csv, EnumerateError, EnumerationTask, DEFAULT_BUDGET};
use systole_core::exact::{newton_power_traces, IntegerMatrix};
use systole_core::lattice::{
    congruence_length_lb, growth_table, in_congruence, is_prime, quat_mult, quat_trd_nrd,
    rational_embedding, split_embedding, sys_lower_bound, trace_congruence, witness_q, Ambient, CongruenceSpec,
    LatticeElement, LatticeError, QuatElement, QuaternionAlgebra,
};
use systole_core::spectral::{classify_semisimple, ElementClass, SpectralData};

use crate::report::{Cell, Format, Report};
use crate::{
    Command, ConstantsArgs, ElementArgs, ElementInput, EnumerateArgs, Failure, GrowthArgs, MembershipArgs,
    QuatCommand, TowerArgs, WitnessArgs,
};

pub const BUDGET_ENV: &str = "SYSTOLECALC_BUDGET";

type Outcome = Result<(), Failure>;

fn domain(e: impl std::fmt::Display) -> Failure {
    Failure::Domain(e.to_string())
}

fn read_json(path: &Path, flag: &str) -> Result<Value, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("{flag}: cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("{flag}: invalid JSON in {}: {e}", path.display())))
}

fn load_algebra(path: &Path) -> Result<QuaternionAlgebra, Failure> {
    QuaternionAlgebra::from_json_value(&read_json(path, "--algebra")?).map_err(|e| Failure::Usage(format!("--algebra: {e}")))
}

fn load_quat(path: &Path, flag: &str) -> Result<QuatElement, Failure> {
    QuatElement::from_json_value(&read_json(path, flag)?).map_err(|e| Failure::Usage(format!("{flag}: {e}")))
}

fn load_element(input: &ElementInput) -> Result<LatticeElement, Failure> {
    match (&input.matrix, &input.algebra, &input.element) {
        (Some(path), _, _) => {
            let m = IntegerMatrix::from_json_value(&read_json(path, "--matrix")?)
                .map_err(|e| Failure::Usage(format!("--matrix: {e}")))?;
            LatticeElement::special_linear(m).map_err(domain)
        }
        (None, Some(alg), Some(el)) => {
            let alg = load_algebra(alg)?;
            LatticeElement::quaternion(alg, load_quat(el, "--element")?).map_err(domain)
        }
        _ => Err(Failure::Usage("one of --matrix or --algebra with --element is required".into())),
    }
}

fn class_of(e: &LatticeElement) -> ElementClass {
    if e.is_identity() {
        ElementClass::Identity
    } else if !e.is_semisimple() {
        ElementClass::NonSemisimple
    } else {
        classify_semisimple(&e.char_poly())
    }
}

fn spectral(e: &LatticeElement, bits: u32) -> Result<SpectralData, Failure> {
    if bits < 16 {
        return Err(Failure::Usage(format!("--bits: {bits} is below the minimum of 16")));
    }
    e.spectral(bits).map_err(domain)
}

fn parse_level(text: &str, flag: &str) -> Result<BigInt, Failure> {
    BigInt::from_str(text.trim())
        .ok()
        .filter(|l| *l >= BigInt::from(1))
        .ok_or_else(|| Failure::Usage(format!("{flag}: expected a positive integer, got {text:?}")))
}

pub fn run(command: Command, format: Format, out: &mut dyn Write) -> Outcome {
    let report = match command {
        Command::Length(a) => length(a)?,
        Command::Bounds(a) => bounds(a)?,
        Command::Membership(a) => membership(a)?,
        Command::Witness(a) => witness(a)?,
        Command::Syslb(a) => syslb(a)?,
        Command::Growth(a) => growth(a)?,
        Command::Constants(a) => constants(a)?,
        Command::Enumerate(a) => return enumerate(a, format, out),
        Command::Quat(q) => quat(q)?,
    };
    report.write(format, out).map_err(|e| Failure::Domain(format!("cannot write output: {e}")))
}

fn length(a: ElementArgs) -> Result<Report, Failure> {
    let e = load_element(&a.input)?;
    let class = class_of(&e);
    if class == ElementClass::NonSemisimple {
        return Err(Failure::Domain("element is not semisimple; its length is undefined".into()));
    }
    let sd = spectral(&e, a.bits)?;
    Ok(Report::record(vec![
        ("n", Cell::int(sd.n)),
        ("class", Cell::text(format!("{class:?}"))),
        ("length", Cell::Float(sd.length)),
        ("length_error", Cell::Float(sd.length_error)),
        ("hyp_trace", Cell::Float(sd.hyp_trace)),
        ("error_radius", Cell::Float(sd.error_radius)),
        ("magnitudes", Cell::Floats(sd.magnitudes)),
    ]))
}

fn bounds(a: ElementArgs) -> Result<Report, Failure> {
    let e = load_element(&a.input)?;
    let sd = spectral(&e, a.bits)?;
    let hyp = hyp_bracket_for(&sd).map_err(domain)?;
    let (p_lo, p_hi, note) = match bracket_from_power_traces(&newton_power_traces(&e.char_poly())) {
        Ok(b) => (Cell::Float(b.lower), Cell::Float(b.upper), Cell::Null),
        Err(err @ BoundsError::TraceTooSmall { .. }) => (Cell::Null, Cell::Null, Cell::text(err.to_string())),
        Err(err) => return Err(domain(err)),
    };
    let tr = e.trace();
    let closed = match (sd.n, tr.to_string().parse::<f64>()) {
        (2, Ok(t)) => Cell::opt_float(exact_length_n2(t).ok()),
        _ => Cell::Null,
    };
    Ok(Report::record(vec![
        ("n", Cell::int(sd.n)),
        ("trace", Cell::int(&tr)),
        ("length", Cell::Float(sd.length)),
        ("length_error", Cell::Float(sd.length_error)),
        ("hyp_trace", Cell::Float(sd.hyp_trace)),
        ("hyp_lower", Cell::Float(hyp.lower)),
        ("hyp_upper", Cell::Float(hyp.upper)),
        ("power_lower", p_lo),
        ("power_upper", p_hi),
        ("power_note", note),
        ("closed_form_n2", closed),
    ]))
}

fn membership(a: MembershipArgs) -> Result<Report, Failure> {
    let e = load_element(&a.input)?;
    let level = parse_level(&a.level, "--level")?;
    let member = in_congruence(&e, &level);
    let spec = CongruenceSpec::new(e.ambient(), level.clone()).map_err(domain)?;
    let (residue, k, note) = match spec.prime_power() {
        _ if !member => (Cell::Null, Cell::Null, Cell::text("not in the subgroup")),
        None => (Cell::Null, Cell::Null, Cell::text("level is not a prime power")),
        Some((p, m)) => match trace_congruence(&e, p, m) {
            Ok((ok, k)) => (Cell::Bool(ok), Cell::int(k), Cell::Null),
            Err(err) => (Cell::Null, Cell::Null, Cell::text(err.to_string())),
        },
    };
    Ok(Report::record(vec![
        ("level", Cell::int(&level)),
        ("trace", Cell::int(e.trace())),
        ("in_congruence", Cell::Bool(member)),
        ("trace_residue_ok", residue),
        ("k", k),
        ("note", note),
    ]))
}

fn witness(a: WitnessArgs) -> Result<Report, Failure> {
    let e = load_element(&a.input)?;
    let q = witness_q(&e, a.p, a.m).map_err(domain)?;
    let threshold = BigInt::from(a.p).pow(a.m) - BigInt::from(e.degree());
    Ok(Report::record(vec![
        ("q", Cell::int(q)),
        ("trace_power", Cell::int(e.pow(q).trace())),
        ("threshold", Cell::int(threshold)),
    ]))
}

fn require_prime(p: u64) -> Result<(), Failure> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(domain(LatticeError::NotPrime(p)))
    }
}

fn syslb(a: TowerArgs) -> Result<Report, Failure> {
    require_prime(a.p)?;
    let sys = sys_lower_bound(a.n, a.p, a.m).map_err(domain)?;
    let len = congruence_length_lb(a.n, a.p, a.m).map_err(domain)?;
    Ok(Report::record(vec![
        ("n", Cell::int(a.n)),
        ("p", Cell::int(a.p)),
        ("m", Cell::int(a.m)),
        ("sys_lb", Cell::Float(sys)),
        ("length_lb", Cell::Float(len)),
    ]))
}

fn growth(a: GrowthArgs) -> Result<Report, Failure> {
    require_prime(a.p)?;
    let rows = growth_table(a.n, a.p, a.mmax).map_err(domain)?;
    Ok(Report::listing(
        vec!["m", "sys_lb", "log_index_ub", "predicted"],
        rows.into_iter()
            .map(|r| vec![Cell::int(r.m), Cell::Float(r.sys_lb), Cell::Float(r.log_index_ub), Cell::Float(r.predicted)])
            .collect(),
    ))
}

fn need(v: Option<u32>, flag: &str, family: &str) -> Result<u32, Failure> {
    v.ok_or_else(|| Failure::Usage(format!("{flag} is required for --family {family}")))
}

fn constants(a: ConstantsArgs) -> Result<Report, Failure> {
    let fam = a.family.trim().to_ascii_lowercase();
    let family = match fam.as_str() {
        "sl" => Family::SpecialLinear { n: need(a.n, "--n", &fam)? },
        "real" => Family::RealHyperbolic { n: need(a.n, "--n", &fam)? },
        "complex" => Family::ComplexHyperbolic { n: need(a.n, "--n", &fam)? },
        "quaternionic" => Family::QuaternionicHyperbolic { n: need(a.n, "--n", &fam)? },
        "real-field" => Family::RealHyperbolicOverField { n: need(a.n, "--n", &fam)?, degree: a.degree.unwrap_or(1) },
        _ => {
            let kc = kc_type(&a.family, a.rank)?;
            Family::Restriction { kc, degree: a.degree.unwrap_or(1) }
        }
    };
    let profile = growth_constant(family).map_err(domain)?;
    let mut fields = profile_fields(&profile);
    if let Some(v) = a.volume {
        let Family::Restriction { kc, .. } = family else {
            return Err(Failure::Usage("--volume applies only to Killing-Cartan families".into()));
        };
        let db = degree_bound(kc, v).map_err(domain)?;
        let vg = volume_growth_constant(kc, v).map_err(domain)?;
        fields.extend([
            ("degree_bound", Cell::Float(db.value)),
            ("caveat_constant_reciprocated", Cell::Bool(db.caveat.constant_reciprocated)),
            ("caveat_requires_f_above_one", Cell::Bool(db.caveat.requires_f_above_one)),
            ("caveat_f_above_one", Cell::Bool(db.caveat.f_above_one)),
            ("volume_d2", Cell::Float(vg.d2)),
            ("volume_c1", Cell::Float(vg.c1)),
        ]);
    }
    Ok(Report::record(fields))
}

fn kc_type(family: &str, rank: Option<u32>) -> Result<KcType, Failure> {
    let parsed = match KcType::from_str(family) {
        Ok(kc) if rank.is_none() || rank == Some(kc.rank()) => Ok(kc),
        Ok(kc) => Err(BoundsError::InvalidType(format!("{kc} has rank {}, not {}", kc.rank(), rank.unwrap_or(0)))),
        Err(_) => KcType::new(family, rank),
    };
    parsed.map_err(|e| Failure::Usage(format!("--family: {e}")))
}

fn profile_fields(p: &ConstantsProfile) -> Vec<(&'static str, Cell)> {
    let family = match p.family {
        Family::SpecialLinear { n } => format!("SL{n}"),
        Family::RealHyperbolic { n } => format!("real hyperbolic {n}"),
        Family::ComplexHyperbolic { n } => format!("complex hyperbolic {n}"),
        Family::QuaternionicHyperbolic { n } => format!("quaternionic hyperbolic {n}"),
        Family::Restriction { kc, degree } => format!("{kc} over degree {degree}"),
        Family::RealHyperbolicOverField { n, degree } => format!("real hyperbolic {n} over degree {degree}"),
    };
    vec![
        ("family", Cell::text(family)),
        ("type", p.kc_type.map_or(Cell::Null, |k| Cell::text(k.to_string()))),
        ("rank", p.rank.map_or(Cell::Null, Cell::int)),
        ("exponents", Cell::Ints(p.exponents.iter().map(u32::to_string).collect())),
        ("f_value", Cell::opt_float(p.f_value)),
        ("f_value_digits", p.f_value_digits.clone().map_or(Cell::Null, Cell::Text)),
        ("d1", Cell::int(p.d1)),
        ("d2", Cell::int(p.d2)),
        ("sl_degree", Cell::int(p.sl_degree)),
        ("c1", Cell::Float(p.c1)),
        ("renormalization", Cell::Float(p.renormalization)),
        ("composed_c1", Cell::opt_float(p.composed_c1)),
        ("caveat", p.caveat.clone().map_or(Cell::Null, Cell::Text)),
    ]
}

fn budget(flag: Option<u128>) -> Result<u128, Failure> {
    if let Some(b) = flag {
        return Ok(b);
    }
    match std::env::var(BUDGET_ENV) {
        Ok(text) => parse_budget(&text)
            .ok_or_else(|| Failure::Usage(format!("{BUDGET_ENV}: expected a non-negative integer, got {text:?}"))),
        Err(_) => Ok(DEFAULT_BUDGET),
    }
}

/// Integers, optionally in `1e10` form.
fn parse_budget(text: &str) -> Option<u128> {
    let t = text.trim();
    if let Ok(v) = t.parse() {
        return Some(v);
    }
    let (mant, exp) = t.split_once(['e', 'E'])?;
    let mant: u128 = mant.parse().ok()?;
    let exp: u32 = exp.parse().ok()?;
    mant.checked_mul(10u128.checked_pow(exp)?)
}

fn enumerate(a: EnumerateArgs, format: Format, out: &mut dyn Write) -> Outcome {
    let level = match (&a.level, a.p, a.m) {
        (Some(l), None, None) => parse_level(l, "--level")?,
        (None, Some(p), Some(m)) => {
            require_prime(p)?;
            BigInt::from(p).pow(m)
        }
        _ => return Err(Failure::Usage("--level cannot be combined with --p/--m".into())),
    };
    if a.jobs == 0 {
        return Err(Failure::Usage("--jobs: must be at least 1".into()));
    }
    let ambient = match &a.algebra {
        Some(path) => Ambient::QuaternionOrder(load_algebra(path)?),
        None => Ambient::SpecialLinear { n: a.n },
    };
    let spec = CongruenceSpec::new(ambient, level.clone()).map_err(domain)?;
    let task = EnumerationTask::new(spec, a.height)
        .semisimple_only(a.semisimple_only)
        .exclude_identity(!a.include_identity)
        .budget(budget(a.budget)?)
        .bits(a.bits);
    let result = partitioned_run(&task, a.jobs).map_err(|e| match e {
        EnumerateError::InvalidTask(msg) => Failure::Usage(msg),
        other => domain(other),
    })?;
    let io = |e: std::io::Error| Failure::Domain(format!("cannot write output: {e}"));
    match format {
        Format::Csv => write_csv(&result, &mut *out).map_err(|e| Failure::Domain(format!("cannot write output: {e}"))),
        Format::Json => {
            let mut v = serde_json::to_value(&result).map_err(domain)?;
            v["min_length_kind"] = Value::String("empirical".into());
            writeln!(out, "{}", serde_json::to_string_pretty(&v).map_err(domain)?).map_err(io)
        }
        Format::Table => {
            let md = &result.metadata;
            let tower = md.tower.map_or(Cell::Null, |(p, m)| Cell::text(format!("{p}^{m}")));
            Report::record(vec![
                ("ambient", Cell::text(ambient.to_string())),
                ("level", Cell::int(&level)),
                ("height", Cell::int(a.height)),
                ("search_space", Cell::int(&md.search_space)),
                ("candidates", Cell::int(md.candidates)),
                ("count_total", Cell::int(result.count_total)),
                ("count_semisimple", Cell::int(result.count_semisimple)),
                ("records", Cell::int(result.records.len())),
                ("min_length_empirical", Cell::opt_float(result.min_length)),
                ("min_length_witness", result.min_length_witness.as_ref().map_or(Cell::Null, |w| Cell::text(w.to_string()))),
                ("min_abs_trace", result.min_abs_trace.as_ref().map_or(Cell::Null, Cell::int)),
                ("tower", tower),
                ("length_bound", Cell::opt_float(md.length_bound)),
                ("witness_failures", Cell::int(result.witness_failures)),
                ("cor52_failures", Cell::int(result.cor52_failures)),
                ("excluded_reason", md.excluded_reason.clone().map_or(Cell::Null, Cell::Text)),
            ])
            .write(Format::Table, out)
            .map_err(io)
        }
    }
}

fn quat(q: QuatCommand) -> Result<Report, Failure> {
    match q {
        QuatCommand::Mul(a) => {
            let alg = load_algebra(&a.algebra)?;
            let u = load_quat(&a.element, "--element")?;
            let v = load_quat(&a.other, "--other")?;
            let w = quat_mult(&u, &v, &alg);
            Ok(Report::record(vec![("coeffs", Cell::Ints(w.coeffs().iter().map(|c| c.to_string()).collect()))]))
        }
        QuatCommand::Norm(a) => {
            let alg = load_algebra(&a.algebra)?;
            let u = load_quat(&a.element, "--element")?;
            let (trd, nrd) = quat_trd_nrd(&u, &alg);
            Ok(Report::record(vec![("trd", Cell::text(trd.to_string())), ("nrd", Cell::text(nrd.to_string()))]))
        }
        QuatCommand::Embed(a) => {
            let alg = load_algebra(&a.algebra)?;
            let u = load_quat(&a.element, "--element")?;
            let real = split_embedding(&u, &alg).map_err(domain)?;
            let rational: Vec<String> = rational_embedding(&u, &alg).into_iter().flatten().map(|c| c.to_string()).collect();
            Ok(Report::record(vec![
                ("real_2x2", Cell::Floats(real.into_iter().flatten().collect())),
                ("rational_4x4", Cell::Ints(rational)),
            ]))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn budget_forms() {
        assert_eq!(parse_budget("1000"), Some(1000));
        assert_eq!(parse_budget("1e10"), Some(10_000_000_000));
        assert_eq!(parse_budget("3E2"), Some(300));
        assert_eq!(parse_budget("-1"), None);
        assert_eq!(parse_budget("lots"), None);
    }
}
