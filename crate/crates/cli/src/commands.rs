use std::io::Write;
use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use splinewave::{
    cascade as run_cascade, dwt_periodic, eea_q, enumerate_system_solutions, idwt_periodic,
    laurent_symbol, lorentz_q, make_filter_pair, refinement_mask, spectral_factor, Branch,
    FactorSolution, LaurentSymbol, QPolynomial, RefinementMask, RELIABLE_ORDER,
};

use crate::output::{fmt17, nums, Num};
use crate::{Failure, EXIT_IO, EXIT_VERIFY};

type CmdResult = Result<(), Failure>;

fn io_failure(what: &str, e: std::io::Error) -> Failure {
    Failure {
        code: EXIT_IO,
        message: format!("{what}: {e}"),
    }
}

fn write_json<T: Serialize>(out: &mut dyn Write, value: &T) -> CmdResult {
    serde_json::to_writer_pretty(&mut *out, value)
        .map_err(|e| io_failure("standard output", e.into()))?;
    writeln!(out).map_err(|e| io_failure("standard output", e))
}

fn order_warning(n: usize) -> Option<String> {
    (n > RELIABLE_ORDER).then(|| {
        format!("order {n} is above {RELIABLE_ORDER}; double-precision results are not validated")
    })
}

struct Construction {
    q: QPolynomial,
    symbol: LaurentSymbol,
    solution: FactorSolution,
}

fn construct(n: usize, branch: &Branch) -> Result<Construction, Failure> {
    let q = lorentz_q(n)?;
    let symbol = laurent_symbol(&q);
    let solution = spectral_factor(&symbol, branch)?;
    Ok(Construction {
        q,
        symbol,
        solution,
    })
}

#[derive(Serialize)]
struct Coefficient {
    power: usize,
    exact: String,
    value: Num,
}

#[derive(Serialize)]
struct QpolyJson {
    n: usize,
    poly: String,
    coeffs: Vec<Coefficient>,
    #[serde(skip_serializing_if = "Option::is_none")]
    oracle: Option<&'static str>,
}

pub fn qpoly(out: &mut dyn Write, n: usize, oracle: bool, json: bool) -> CmdResult {
    let q = lorentz_q(n)?;
    let verdict = if oracle {
        let (s, t) = eea_q(n)?;
        Some(if s == q && t == q.poly.reflect() {
            "MATCH"
        } else {
            "MISMATCH"
        })
    } else {
        None
    };
    let coeffs: Vec<Coefficient> = q
        .poly
        .coeffs()
        .iter()
        .zip(q.poly.to_f64())
        .enumerate()
        .map(|(power, (c, v))| Coefficient {
            power,
            exact: c.to_string(),
            value: Num(v),
        })
        .collect();
    if json {
        write_json(
            out,
            &QpolyJson {
                n,
                poly: q.poly.to_string(),
                coeffs,
                oracle: verdict,
            },
        )?;
    } else {
        let w = |e| io_failure("standard output", e);
        writeln!(out, "{}", q.poly).map_err(w)?;
        for c in &coeffs {
            writeln!(
                out,
                "x^{:<3} {:>24}  {}",
                c.power,
                c.exact,
                fmt17(c.value.0)
            )
            .map_err(w)?;
        }
        if let Some(v) = verdict {
            writeln!(out, "EEA oracle: {v}").map_err(w)?;
        }
    }
    match verdict {
        Some("MISMATCH") => Err(Failure {
            code: EXIT_VERIFY,
            message: "extended Euclidean construction disagrees with the Lorentz form".into(),
        }),
        _ => Ok(()),
    }
}

#[derive(Serialize)]
struct SolutionJson {
    n: usize,
    branch: String,
    index: u64,
    choice: String,
    a: Vec<Num>,
    sum_a: Num,
    sum_a_sq: Num,
    #[serde(skip_serializing_if = "Option::is_none")]
    warning: Option<String>,
}

fn solution_json(s: &FactorSolution, branch: String) -> SolutionJson {
    SolutionJson {
        n: s.n,
        branch,
        index: s.index(),
        choice: s.choice_string(),
        a: nums(&s.a),
        sum_a: Num(s.sum_a()),
        sum_a_sq: Num(s.sum_a_sq()),
        warning: order_warning(s.n),
    }
}

#[derive(Serialize)]
struct AllSolutionsJson {
    n: usize,
    count: usize,
    positive_branches: usize,
    solutions: Vec<SolutionJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    warning: Option<String>,
}

pub fn factor(out: &mut dyn Write, n: usize, branch: &Branch, all: bool) -> CmdResult {
    if all {
        let symbol = laurent_symbol(&lorentz_q(n)?);
        let sols = enumerate_system_solutions(&symbol)?;
        let solutions: Vec<SolutionJson> = sols
            .iter()
            .map(|s| {
                let tag = if s.sign > 0 { "" } else { ":negated" };
                let mut j = solution_json(s, format!("index:{}{tag}", s.index()));
                j.warning = None;
                j
            })
            .collect();
        return write_json(
            out,
            &AllSolutionsJson {
                n,
                count: solutions.len(),
                positive_branches: sols.iter().filter(|s| s.sign > 0).count(),
                solutions,
                warning: order_warning(n),
            },
        );
    }
    let c = construct(n, branch)?;
    write_json(out, &solution_json(&c.solution, branch.to_string()))
}

#[derive(Serialize)]
struct CoeffsJson {
    n: usize,
    branch: String,
    k_min: i64,
    k_max: i64,
    k: Vec<i64>,
    p: Vec<Num>,
    #[serde(skip_serializing_if = "Option::is_none")]
    warning: Option<String>,
}

pub fn coeffs(out: &mut dyn Write, n: usize, branch: &Branch, csv: bool) -> CmdResult {
    let c = construct(n, branch)?;
    let mask = refinement_mask(&c.solution)?;
    let w = |e| io_failure("standard output", e);
    if csv {
        writeln!(out, "k,p").map_err(w)?;
        for (i, p) in mask.p.iter().enumerate() {
            writeln!(out, "{},{}", mask.k_min + i as i64, fmt17(*p)).map_err(w)?;
        }
        return Ok(());
    }
    write_json(
        out,
        &CoeffsJson {
            n,
            branch: branch.to_string(),
            k_min: mask.k_min,
            k_max: mask.k_max,
            k: (mask.k_min..=mask.k_max).collect(),
            p: nums(&mask.p),
            warning: order_warning(n),
        },
    )
}

fn write_table(out: &mut dyn Write, table: &splinewave::ScalingTable) -> std::io::Result<()> {
    writeln!(out, "x,phi")?;
    for (x, v) in table.points() {
        writeln!(out, "{},{}", fmt17(x), fmt17(v))?;
    }
    Ok(())
}

pub fn cascade(
    out: &mut dyn Write,
    n: usize,
    branch: &Branch,
    level: u32,
    iters: usize,
    path: Option<&Path>,
) -> CmdResult {
    let c = construct(n, branch)?;
    let mask = refinement_mask(&c.solution)?;
    let table = run_cascade(&mask, level, iters)?;
    match path {
        Some(p) => {
            let file =
                std::fs::File::create(p).map_err(|e| io_failure(&p.display().to_string(), e))?;
            let mut buf = std::io::BufWriter::new(file);
            write_table(&mut buf, &table)
                .and_then(|()| buf.flush())
                .map_err(|e| io_failure(&p.display().to_string(), e))?;
        }
        None => write_table(out, &table).map_err(|e| io_failure("standard output", e))?,
    }
    eprintln!(
        "cascade: n={n} levels={level} iters={iters} last_diff={} integral={}",
        fmt17(table.last_diff),
        fmt17(table.integral())
    );
    if table.nonconvergent() {
        eprintln!("warning: successive-iterate differences grew over the final 3 iterations");
    }
    Ok(())
}

#[derive(Serialize)]
struct CheckJson {
    value: Num,
    limit: Num,
    relation: &'static str,
    pass: bool,
}

/// Named checks serialized as a JSON object in report order.
struct Checks(Vec<(&'static str, CheckJson)>);

impl Serialize for Checks {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_map(self.0.iter().map(|(k, v)| (k, v)))
    }
}

#[derive(Serialize)]
struct ReportJson {
    n: usize,
    branch: String,
    a: Vec<Num>,
    p: Vec<Num>,
    sum_a: Num,
    sum_a_sq: Num,
    c0_exact: String,
    checks: Checks,
    filter_pair_accepted: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    perturbation: Option<serde_json::Value>,
    warnings: Vec<String>,
    pass: bool,
}

pub fn verify(
    out: &mut dyn Write,
    n: usize,
    branch: &Branch,
    perturb: Option<(i64, f64)>,
) -> CmdResult {
    let c = construct(n, branch)?;
    let mut mask: RefinementMask = refinement_mask(&c.solution)?;
    if let Some((k, delta)) = perturb {
        if k < mask.k_min || k > mask.k_max {
            return Err(Failure::usage(format!(
                "perturbation index {k} outside {}..={}",
                mask.k_min, mask.k_max
            )));
        }
        mask.p[(k - mask.k_min) as usize] += delta;
    }
    let report = splinewave::verify(&c.q, &c.symbol, &c.solution, &mask, &branch.to_string());
    let checks = Checks(
        report
            .checks
            .iter()
            .map(|ch| {
                let v = CheckJson {
                    value: Num(ch.value),
                    limit: Num(ch.limit),
                    relation: ch.relation,
                    pass: ch.pass,
                };
                (ch.name, v)
            })
            .collect(),
    );
    let json = ReportJson {
        n,
        branch: report.branch.clone(),
        a: nums(&report.a),
        p: nums(&report.p),
        sum_a: Num(report.sum_a),
        sum_a_sq: Num(report.sum_a_sq),
        c0_exact: c.symbol.series.coeffs()[0].to_string(),
        checks,
        filter_pair_accepted: report.filter_pair_accepted,
        perturbation: perturb.map(|(k, d)| serde_json::json!({ "k": k, "delta": d })),
        warnings: report.warnings.clone(),
        pass: report.pass,
    };
    write_json(out, &json)?;
    if report.pass {
        Ok(())
    } else {
        let failed: Vec<&str> = report
            .checks
            .iter()
            .filter(|c| !c.pass)
            .map(|c| c.name)
            .chain((!report.filter_pair_accepted).then_some("filter_pair"))
            .collect();
        Err(Failure {
            code: EXIT_VERIFY,
            message: format!("verification failed: {}", failed.join(", ")),
        })
    }
}

#[derive(Serialize)]
struct RoundtripJson {
    n: usize,
    branch: String,
    length: usize,
    levels: usize,
    seed: u64,
    max_err: Num,
    max_err_relative: Num,
    parseval_deviation: Num,
    coefficient_count: usize,
}

/// Uniform samples in `[-1, 1)` from a ChaCha8 stream seeded with `seed`.
pub fn seeded_signal(length: usize, seed: u64) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..length).map(|_| rng.gen_range(-1.0..1.0)).collect()
}

pub fn roundtrip(
    out: &mut dyn Write,
    n: usize,
    branch: &Branch,
    length: usize,
    levels: usize,
    seed: u64,
) -> CmdResult {
    if levels == 0 || levels >= usize::BITS as usize || !length.is_multiple_of(1usize << levels) {
        return Err(Failure::usage(format!(
            "length {length} is not divisible by 2^{levels}"
        )));
    }
    let c = construct(n, branch)?;
    let mask = refinement_mask(&c.solution)?;
    let pair = make_filter_pair(&mask)?;
    let signal = seeded_signal(length, seed);
    let pyramid = dwt_periodic(&signal, &pair, levels)?;
    let back = idwt_periodic(&pyramid, &pair)?;
    let max_err = signal
        .iter()
        .zip(&back)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    let sup = signal.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    let energy: f64 = signal.iter().map(|x| x * x).sum();
    write_json(
        out,
        &RoundtripJson {
            n,
            branch: branch.to_string(),
            length,
            levels,
            seed,
            max_err: Num(max_err),
            max_err_relative: Num(if sup > 0.0 { max_err / sup } else { max_err }),
            parseval_deviation: Num(if energy > 0.0 {
                (pyramid.energy().sqrt() - energy.sqrt()).abs() / energy.sqrt()
            } else {
                pyramid.energy().sqrt()
            }),
            coefficient_count: pyramid.coefficient_count(),
        },
    )
}
