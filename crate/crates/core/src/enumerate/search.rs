//! Lexicographic search over entry vectors. The last coordinate is never
//! enumerated: it is solved from `det = 1` (or `nrd = 1`), and for matrices a
//! choice of the first `n - 1` rows whose last-row cofactors are not coprime
//! is skipped outright.

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_traits::{Signed, ToPrimitive};
use rayon::prelude::*;

use super::{EnumerateError, EnumerationMetadata, EnumerationResult, EnumerationTask, Record};
use crate::exact::IntegerMatrix;
use crate::lattice::{
    check_tower_prime, congruence_length_lb, witness_q, Ambient, LatticeElement, LatticeError, QuatElement,
    QuaternionAlgebra,
};
use crate::spectral::{classify_semisimple, ElementClass};

/// Values in `[-h, h]` congruent to `target` modulo `level`, ascending.
fn residue_values(h: i64, target: i64, level: i64) -> Vec<i64> {
    let start = -h + (target + h).rem_euclid(level);
    (0..).map(|k| start + k * level).take_while(|&v| v <= h).collect()
}

/// Everything derived from the task once, shared by all ranges.
struct Plan {
    task: EnumerationTask,
    n: usize,
    level: i64,
    /// Allowed values per coordinate, in search order.
    values: Vec<Vec<i64>>,
    tower: Option<(u64, u32)>,
    excluded_reason: Option<String>,
    length_bound: Option<f64>,
}

impl Plan {
    fn new(task: &EnumerationTask) -> Result<Self, EnumerateError> {
        let h = i64::try_from(task.height)
            .ok()
            .filter(|&h| h >= 1 && h < 1 << 40)
            .ok_or_else(|| EnumerateError::InvalidTask(format!("height {} out of range", task.height)))?;
        let level = task
            .spec
            .level
            .to_i64()
            .ok_or_else(|| EnumerateError::InvalidTask("level too large".into()))?;
        let (n, coords) = match task.spec.ambient {
            Ambient::SpecialLinear { n } => {
                if n < 2 {
                    return Err(EnumerateError::InvalidTask("matrix size must be at least 2".into()));
                }
                (n, n * n)
            }
            Ambient::QuaternionOrder(alg) => {
                if !alg.split_real() {
                    return Err(LatticeError::NotSplit(alg.to_string()).into());
                }
                (2, 4)
            }
        };
        let values: Vec<Vec<i64>> = (0..coords)
            .map(|k| {
                let diagonal = match task.spec.ambient {
                    Ambient::SpecialLinear { n } => k / n == k % n,
                    Ambient::QuaternionOrder(_) => k == 0,
                };
                residue_values(h, i64::from(diagonal), level)
            })
            .collect();

        let (tower, excluded_reason) = match task.spec.prime_power() {
            None => (None, Some(format!("level {} is not a prime power", task.spec.level))),
            Some((p, m)) => match check_tower_prime(&task.spec.ambient, p) {
                Ok(()) => (Some((p, m)), None),
                Err(e) => (None, Some(e.to_string())),
            },
        };
        let length_bound = match tower {
            Some((p, m)) => Some(congruence_length_lb(n, p, m)?),
            None => None,
        };
        Ok(Self { task: task.clone(), n, level, values, tower, excluded_reason, length_bound })
    }

    fn candidates(&self) -> u128 {
        self.values.iter().map(|v| v.len() as u128).product()
    }

    /// Size of the enumerated index space (all coordinates but the last).
    fn outer_size(&self) -> u128 {
        self.values[..self.values.len() - 1].iter().map(|v| v.len() as u128).product()
    }

    fn metadata(&self) -> EnumerationMetadata {
        let side = BigInt::from(2 * self.task.height + 1);
        EnumerationMetadata {
            search_space: side.pow(self.values.len() as u32),
            candidates: self.candidates(),
            tower: self.tower,
            excluded_reason: self.excluded_reason.clone(),
            length_bound: self.length_bound,
        }
    }

    fn allowed(&self, coord: usize, v: i64) -> bool {
        let target = match self.task.spec.ambient {
            Ambient::SpecialLinear { n } => i64::from(coord / n == coord % n),
            Ambient::QuaternionOrder(_) => i64::from(coord == 0),
        };
        v.abs() <= self.task.height as i64 && (v - target).rem_euclid(self.level) == 0
    }
}

fn decode(mut index: u128, radices: &[Vec<i64>], out: &mut [i64]) {
    for (slot, vals) in out.iter_mut().zip(radices).rev() {
        let r = vals.len() as u128;
        *slot = vals[(index % r) as usize];
        index /= r;
    }
}

#[derive(Default)]
struct Partial {
    count_total: u64,
    count_semisimple: u64,
    min_length: Option<(f64, LatticeElement)>,
    min_abs_trace: Option<BigInt>,
    witness_failures: u64,
    cor52_failures: u64,
    records: Vec<Record>,
}

impl Partial {
    /// Appends a later range; ties keep the earlier element.
    fn absorb(&mut self, other: Partial) {
        self.count_total += other.count_total;
        self.count_semisimple += other.count_semisimple;
        self.witness_failures += other.witness_failures;
        self.cor52_failures += other.cor52_failures;
        if let Some((l, e)) = other.min_length {
            if self.min_length.as_ref().map_or(true, |(cur, _)| l < *cur) {
                self.min_length = Some((l, e));
            }
        }
        if let Some(t) = other.min_abs_trace {
            if self.min_abs_trace.as_ref().map_or(true, |cur| t < *cur) {
                self.min_abs_trace = Some(t);
            }
        }
        self.records.extend(other.records);
    }

    fn visit(&mut self, plan: &Plan, e: LatticeElement) -> Result<(), EnumerateError> {
        self.count_total += 1;
        let is_identity = e.is_identity();
        let is_semisimple = e.is_semisimple();
        if is_semisimple {
            self.count_semisimple += 1;
        }
        if (plan.task.semisimple_only && !is_semisimple) || (plan.task.exclude_identity && is_identity) {
            return Ok(());
        }
        let trace = e.trace();
        let (mut length, mut length_error, mut positive_length) = (None, None, false);
        if is_semisimple {
            let sd = e.spectral(plan.task.bits)?;
            length = Some(sd.length);
            length_error = Some(sd.length_error);
            positive_length = !is_identity && classify_semisimple(&e.char_poly()) == ElementClass::PositiveLength;
        }
        let mut witness = None;
        let mut passes_cor52 = true;
        if let (Some((p, m)), true, false) = (plan.tower, is_semisimple, is_identity) {
            match witness_q(&e, p, m) {
                Ok(q) => witness = Some(q),
                Err(LatticeError::NoWitness { .. }) => self.witness_failures += 1,
                Err(other) => return Err(other.into()),
            }
            let bound = plan.length_bound.expect("bound exists whenever the tower applies");
            let (l, err) = (length.unwrap_or(0.0), length_error.unwrap_or(0.0));
            passes_cor52 = l + err >= bound;
            if !passes_cor52 {
                self.cor52_failures += 1;
            }
        }
        if is_semisimple && !is_identity {
            let t = trace.abs();
            if self.min_abs_trace.as_ref().map_or(true, |cur| t < *cur) {
                self.min_abs_trace = Some(t);
            }
        }
        if positive_length {
            let l = length.expect("semisimple");
            if self.min_length.as_ref().map_or(true, |(cur, _)| l < *cur) {
                self.min_length = Some((l, e.clone()));
            }
        }
        self.records.push(Record {
            entries: e.entry_vector(),
            trace,
            is_semisimple,
            is_identity,
            length,
            length_error,
            positive_length,
            witness_q: witness,
            passes_cor52,
        });
        Ok(())
    }
}

/// Last-row cofactors `C_j` with `det = sum_j C_j x_{n-1, j}`.
fn last_row_cofactors(rows: &[i64], n: usize) -> Vec<BigInt> {
    let mut full: Vec<i64> = rows.to_vec();
    full.extend(std::iter::repeat(0).take(n));
    let m = IntegerMatrix::new(n, full.into_iter().map(BigInt::from).collect()).expect("square");
    (0..n)
        .map(|j| {
            let minor = m.minor(n - 1, j).map(|mm| mm.determinant()).unwrap_or_else(|| BigInt::from(1));
            if (n - 1 + j) % 2 == 0 {
                minor
            } else {
                -minor
            }
        })
        .collect()
}

fn run_sl(plan: &Plan, start: u128, end: u128) -> Result<Partial, EnumerateError> {
    let n = plan.n;
    let head = n * (n - 1);
    let (prefix_radices, rest) = plan.values.split_at(head);
    let inner_radices = &rest[..n - 1];
    let last_values = &rest[n - 1];
    let inner_size: u128 = inner_radices.iter().map(|v| v.len() as u128).product();
    let mut out = Partial::default();
    if start >= end {
        return Ok(out);
    }
    let mut entries = vec![0i64; n * n];
    let first_prefix = start / inner_size;
    let last_prefix = (end - 1) / inner_size;
    for prefix in first_prefix..=last_prefix {
        decode(prefix, prefix_radices, &mut entries[..head]);
        let cof = last_row_cofactors(&entries[..head], n);
        let g = cof.iter().fold(BigInt::from(0), |acc, c| acc.gcd(c));
        if g != BigInt::from(1) {
            continue;
        }
        let cof: Vec<i128> = cof
            .iter()
            .map(|c| c.to_i128().ok_or_else(|| EnumerateError::InvalidTask("height too large".into())))
            .collect::<Result<_, _>>()?;
        let base = prefix * inner_size;
        let lo = start.max(base) - base;
        let hi = end.min(base + inner_size) - base;
        for inner in lo..hi {
            decode(inner, inner_radices, &mut entries[head..n * n - 1]);
            let partial: i128 = (0..n - 1).map(|j| cof[j] * i128::from(entries[head + j])).sum();
            let c_last = cof[n - 1];
            let solutions: Vec<i64> = if c_last == 0 {
                if partial == 1 {
                    last_values.clone()
                } else {
                    Vec::new()
                }
            } else {
                let num = 1 - partial;
                if num % c_last != 0 {
                    continue;
                }
                match i64::try_from(num / c_last) {
                    Ok(v) if plan.allowed(n * n - 1, v) => vec![v],
                    _ => continue,
                }
            };
            for v in solutions {
                entries[n * n - 1] = v;
                let m = IntegerMatrix::new(n, entries.iter().map(|&x| BigInt::from(x)).collect()).expect("square");
                out.visit(plan, LatticeElement::SpecialLinear(m))?;
            }
        }
    }
    Ok(out)
}

fn run_quat(plan: &Plan, alg: QuaternionAlgebra, start: u128, end: u128) -> Result<Partial, EnumerateError> {
    let mut out = Partial::default();
    let radices = &plan.values[..3];
    let (a, b) = (i128::from(alg.a()), i128::from(alg.b()));
    let ab = a * b;
    let mut c = [0i64; 3];
    for idx in start..end {
        decode(idx, radices, &mut c);
        let (w, x, y) = (i128::from(c[0]), i128::from(c[1]), i128::from(c[2]));
        // ab z^2 = 1 - w^2 + a x^2 + b y^2
        let r = 1 - w * w + a * x * x + b * y * y;
        if r % ab != 0 {
            continue;
        }
        let z2 = r / ab;
        if z2 < 0 {
            continue;
        }
        let z = z2.sqrt();
        if z * z != z2 {
            continue;
        }
        let zs: Vec<i128> = if z == 0 { vec![0] } else { vec![-z, z] };
        for z in zs {
            let z = z as i64;
            if !plan.allowed(3, z) {
                continue;
            }
            let u = QuatElement::from_integers(c[0], c[1], c[2], z);
            out.visit(plan, LatticeElement::quaternion(alg, u)?)?;
        }
    }
    Ok(out)
}

fn run_range(plan: &Plan, start: u128, end: u128) -> Result<Partial, EnumerateError> {
    match plan.task.spec.ambient {
        Ambient::SpecialLinear { .. } => run_sl(plan, start, end),
        Ambient::QuaternionOrder(alg) => run_quat(plan, alg, start, end),
    }
}

fn finish(plan: &Plan, p: Partial) -> EnumerationResult {
    let (min_length, min_length_witness) = match p.min_length {
        Some((l, e)) => (Some(l), Some(e)),
        None => (None, None),
    };
    EnumerationResult {
        count_total: p.count_total,
        count_semisimple: p.count_semisimple,
        min_length,
        min_length_witness,
        min_abs_trace: p.min_abs_trace,
        witness_failures: p.witness_failures,
        cor52_failures: p.cor52_failures,
        records: p.records,
        metadata: plan.metadata(),
    }
}

fn checked_plan(task: &EnumerationTask) -> Result<Plan, EnumerateError> {
    let plan = Plan::new(task)?;
    let estimate = plan.candidates();
    if estimate > task.budget {
        return Err(EnumerateError::BudgetExceeded { estimate, budget: task.budget });
    }
    Ok(plan)
}

/// Splits the search into `parts` contiguous ranges, runs them in parallel
/// and merges in range order; the result does not depend on `parts`.
pub fn partitioned_run(task: &EnumerationTask, parts: usize) -> Result<EnumerationResult, EnumerateError> {
    if parts == 0 {
        return Err(EnumerateError::InvalidTask("parts must be at least 1".into()));
    }
    let plan = checked_plan(task)?;
    let total = plan.outer_size();
    let k = parts as u128;
    let bounds: Vec<(u128, u128)> = (0..k).map(|i| (total * i / k, total * (i + 1) / k)).collect();
    let partials: Vec<Result<Partial, EnumerateError>> =
        bounds.into_par_iter().map(|(s, e)| run_range(&plan, s, e)).collect();
    let mut merged = Partial::default();
    for p in partials {
        merged.absorb(p?);
    }
    Ok(finish(&plan, merged))
}

pub fn enumerate(task: &EnumerationTask) -> Result<EnumerationResult, EnumerateError> {
    let plan = checked_plan(task)?;
    let total = plan.outer_size();
    Ok(finish(&plan, run_range(&plan, 0, total)?))
}

pub fn enumerate_sl(task: &EnumerationTask) -> Result<EnumerationResult, EnumerateError> {
    match task.spec.ambient {
        Ambient::SpecialLinear { .. } => enumerate(task),
        _ => Err(EnumerateError::InvalidTask("expected a special linear ambient group".into())),
    }
}

pub fn enumerate_quat(task: &EnumerationTask) -> Result<EnumerationResult, EnumerateError> {
    match task.spec.ambient {
        Ambient::QuaternionOrder(_) => enumerate(task),
        _ => Err(EnumerateError::InvalidTask("expected a quaternion order".into())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::CongruenceSpec;

    fn sl_task(n: usize, level: i64, h: u64) -> EnumerationTask {
        EnumerationTask::new(CongruenceSpec::new(Ambient::SpecialLinear { n }, BigInt::from(level)).unwrap(), h)
    }

    #[test]
    fn residue_lists() {
        assert_eq!(residue_values(7, 1, 5), vec![-4, 1, 6]);
        assert_eq!(residue_values(5, 0, 5), vec![-5, 0, 5]);
        assert_eq!(residue_values(2, 0, 1), vec![-2, -1, 0, 1, 2]);
    }

    #[test]
    fn full_sl2_height_one() {
        // brute force over all 3^4 matrices with entries in {-1, 0, 1}
        let mut expected = 0;
        for v in 0..81 {
            let d: Vec<i64> = (0..4).map(|k| (v / 3i64.pow(k)) % 3 - 1).collect();
            if d[0] * d[3] - d[1] * d[2] == 1 {
                expected += 1;
            }
        }
        let r = enumerate_sl(&sl_task(2, 1, 1)).unwrap();
        assert_eq!(r.count_total, expected);
        assert!(r.records.iter().any(|rec| rec.is_identity));
        let mut sorted = r.records.iter().map(|rec| rec.entries.clone()).collect::<Vec<_>>();
        sorted.sort();
        assert_eq!(sorted, r.records.iter().map(|rec| rec.entries.clone()).collect::<Vec<_>>());
        assert!(r.metadata.tower.is_none());
    }

    #[test]
    fn small_gamma5() {
        let r = enumerate_sl(&sl_task(2, 5, 30).semisimple_only(true).exclude_identity(true)).unwrap();
        assert_eq!(r.min_abs_trace, Some(BigInt::from(23)));
        assert_eq!(r.witness_failures, 0);
        assert_eq!(r.cor52_failures, 0);
        assert!(r.records.iter().all(|rec| rec.witness_q == Some(1)));
        // 2 arccosh(23 / 2)
        assert!((r.min_length.unwrap() - 6.267196947889644).abs() < 1e-12);
    }

    #[test]
    fn identity_only_when_height_too_small() {
        let r = enumerate_sl(&sl_task(2, 7, 5)).unwrap();
        assert_eq!(r.count_total, 1);
        assert!(r.min_length.is_none());
    }

    #[test]
    fn budget_is_enforced() {
        let err = enumerate_sl(&sl_task(3, 1, 3).budget(1000)).unwrap_err();
        assert!(matches!(err, EnumerateError::BudgetExceeded { estimate, .. } if estimate == 7u128.pow(9)));
    }

    #[test]
    fn partitions_agree() {
        let task = sl_task(2, 3, 9);
        let one = partitioned_run(&task, 1).unwrap();
        for parts in [2, 3, 7, 1000] {
            assert_eq!(partitioned_run(&task, parts).unwrap(), one);
        }
        assert_eq!(enumerate(&task).unwrap(), one);
    }
}
