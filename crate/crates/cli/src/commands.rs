//! Payload builders. Each command yields a JSON value and, where the result is
//! tabular, a CSV rendering of the same data.

use serde_json::{json, Value};
use switchlab::classify::{classify_channel, is_entanglement_breaking, switch_usefulness, UselessPredicate};
use switchlab::linalg::{r, CMat2};
use switchlab::qchannel::serial::ComplexMatrix;
use switchlab::qchannel::{bloch_to_density, presets, Channel, ChannelSpec, PauliChannel, TMatrix};
use switchlab::report::fmt_g12;
use switchlab::scan::{self, Branch, Family};
use switchlab::switch::{
    branch_maps, default_control, effective_channel, noisy_control_effective, pauli_branches, ControlledOp,
};
use switchlab::tasks::{bisect, coherence, grid, qrac, steering, CurveTable, ROOT_TOL};

use crate::args::{BranchArg, ChannelArgs, CoherenceArgs, Command, NoisyArgs, ScanKind, SweepArgs, SwitchArgs};
use crate::CliError;

pub struct Payload {
    pub json: Value,
    pub csv: Option<String>,
}

const OCTAHEDRON_DEFAULT: u64 = 100_000;
const CENSUS_DEFAULT: u64 = 1_000_000;

pub fn run(command: &Command, samples: Option<u64>, seed: u64) -> Result<Payload, CliError> {
    match command {
        Command::Classify(a) => classify(a),
        Command::Switch(a) => switch(a),
        Command::Qrac(a) => qrac_sweep(a),
        Command::Steer(a) => steer_sweep(a),
        Command::Coherence(a) => coherence_report(a),
        Command::Noisy(a) => noisy_sweep(a),
        Command::Scan { kind } => scan_cmd(kind, samples, seed),
        Command::Selftest | Command::Replay { .. } => {
            Err(CliError::Usage(format!("{} has no payload", command.name())))
        }
    }
}

fn parse_reals(s: &str, n: usize, what: &str) -> Result<Vec<f64>, CliError> {
    let v: Vec<f64> = s
        .split(',')
        .map(|x| x.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|e| CliError::Usage(format!("{what}: {e}")))?;
    if v.len() != n || v.iter().any(|x| !x.is_finite()) {
        return Err(CliError::Usage(format!("{what}: expected {n} finite comma-separated numbers")));
    }
    Ok(v)
}

/// The channel, and its Pauli form when given as one.
pub fn parse_channel(a: &ChannelArgs) -> Result<(Channel, Option<PauliChannel>), CliError> {
    if let Some(s) = &a.pauli {
        let l = parse_reals(s, 3, "--pauli")?;
        let p = PauliChannel::from_lambdas([l[0], l[1], l[2]])?;
        return Ok((p.channel(), Some(p)));
    }
    if let Some(s) = &a.tmatrix {
        let t = TMatrix::from_row_major(&parse_reals(s, 16, "--tmatrix")?)?;
        return Ok((Channel::from_tmatrix(&t)?, None));
    }
    if let Some(s) = &a.kraus {
        let ops: Vec<ComplexMatrix> =
            serde_json::from_str(s).map_err(|e| CliError::Usage(format!("--kraus: {e}")))?;
        return Ok((ChannelSpec::Kraus { ops }.to_channel()?, None));
    }
    if let Some(s) = &a.preset {
        return Ok((presets::by_name(s)?, None));
    }
    Err(CliError::Usage("give one of --pauli, --tmatrix, --kraus, --preset".into()))
}

fn rows(m: &impl std::ops::Index<(usize, usize), Output = f64>) -> Vec<Vec<f64>> {
    (0..4).map(|i| (0..4).map(|j| m[(i, j)]).collect()).collect()
}

fn csv_line(cells: &[String]) -> String {
    let mut s = cells.join(",");
    s.push('\n');
    s
}

fn bit(b: bool) -> String {
    u8::from(b).to_string()
}

fn classify(a: &ChannelArgs) -> Result<Payload, CliError> {
    let (ch, _) = parse_channel(a)?;
    let class = classify_channel(&ch)?;
    let useful = switch_usefulness(&ch, UselessPredicate::EntanglementBreaking)?;
    let mut csv = String::from(
        "is_ebc,octahedron_margin,ibc_2,ibc_3,ibc_4,coherence_breaking,useless_plain,useful_under_plus,useful_under_minus,completely_useless\n",
    );
    let verdict = |n: u32| format!("{:?}", class.ibc_flags[&n]).to_lowercase();
    csv.push_str(&csv_line(&[
        bit(class.is_ebc),
        class.pauli_octahedron_margin.map(fmt_g12).unwrap_or_default(),
        verdict(2),
        verdict(3),
        verdict(4),
        bit(class.is_coherence_breaking),
        bit(useful.useless_plain),
        bit(useful.useful_under_plus),
        bit(useful.useful_under_minus),
        bit(useful.completely_useless),
    ]));
    Ok(Payload {
        json: json!({
            "tmatrix": rows(ch.tmatrix().matrix()),
            "classification": class,
            "switch_usefulness": useful,
        }),
        csv: Some(csv),
    })
}

fn switch(a: &SwitchArgs) -> Result<Payload, CliError> {
    let (ch, pauli) = parse_channel(&a.channel)?;
    let b = parse_reals(&a.control, 3, "--control")?;
    let omega = bloch_to_density([b[0], b[1], b[2]])?;
    let (plus, minus) = branch_maps(ch.kraus());
    let half = CMat2::identity() * r(0.5);
    let q = plus.apply_operator(&half).trace().re;
    let eff = effective_channel(ch.kraus(), &ControlledOp::default_correction(), &omega)?;
    let zero_minus = minus.is_zero(switchlab::classify::ZERO_MAP_TOL);
    let pauli_json = pauli.map(|p| {
        let br = pauli_branches(&p);
        json!({
            "probs": p.probs(),
            "q": br.q,
            "c_plus_lambdas": br.c_plus.lambdas(),
            "c_minus_lambdas": br.c_minus.lambdas(),
        })
    });
    let t_plus = plus.affine_matrix();
    let t_minus = minus.affine_matrix();
    let mut csv = String::from("map,row,c0,c1,c2,c3\n");
    for (name, m) in [("branch_plus", &t_plus), ("branch_minus", &t_minus), ("effective", eff.tmatrix().matrix())] {
        for i in 0..4 {
            let mut cells = vec![name.to_string(), i.to_string()];
            cells.extend((0..4).map(|j| fmt_g12(m[(i, j)])));
            csv.push_str(&csv_line(&cells));
        }
    }
    Ok(Payload {
        json: json!({
            "control_bloch": b,
            "plus_weight": q,
            "branch_plus": {
                "affine": rows(&t_plus),
                "entanglement_breaking": is_entanglement_breaking(&plus)?,
            },
            "branch_minus": {
                "affine": rows(&t_minus),
                "zero": zero_minus,
                "entanglement_breaking": is_entanglement_breaking(&minus)?,
            },
            "pauli": pauli_json,
            "corrected": {
                "correction": "I (+) sigma_z (-)",
                "tmatrix": rows(eff.tmatrix().matrix()),
                "entanglement_breaking": is_entanglement_breaking(eff.kraus())?,
            },
        }),
        csv: Some(csv),
    })
}

fn corrected_phi(l: f64) -> Result<Channel, CliError> {
    let ch = presets::phi(l)?;
    Ok(effective_channel(ch.kraus(), &ControlledOp::default_correction(), &default_control())?)
}

fn sweep(
    steps: usize,
    y_name: &str,
    bound: f64,
    f: impl Fn(f64) -> Result<f64, CliError> + Sync,
) -> Result<Payload, CliError> {
    if steps == 0 {
        return Err(CliError::Usage("--steps must be at least 1".into()));
    }
    let xs = grid(0.0, 1.0, steps);
    let ys: Vec<f64> = xs.iter().map(|&x| f(x)).collect::<Result<_, _>>()?;
    let table = CurveTable {
        x_name: "lambda3".into(),
        y_name: y_name.into(),
        rows: xs.iter().copied().zip(ys).collect(),
    };
    let threshold = bisect(|x| f(x).map(|y| y - bound).unwrap_or(f64::NAN), 0.0, 1.0, ROOT_TOL)?;
    Ok(Payload {
        json: json!({
            "x": table.x_name,
            "y": table.y_name,
            "bound": bound,
            "threshold_lambda3": threshold,
            "rows": table.rows,
        }),
        csv: Some(table.to_csv()),
    })
}

fn qrac_sweep(a: &SweepArgs) -> Result<Payload, CliError> {
    let strategy = qrac::QracStrategy::standard();
    sweep(a.steps, "success", qrac::qrac_classical_bound(2), |l| {
        Ok(qrac::qrac_success(&strategy, &corrected_phi(l)?)?)
    })
}

fn steer_sweep(a: &SweepArgs) -> Result<Payload, CliError> {
    let phi_plus = switchlab::qchannel::DensityMatrix::phi_plus();
    sweep(a.steps, "f", 1.0, |l| {
        Ok(steering::steering_f(&steering::steered_state(&corrected_phi(l)?, &phi_plus)?)?)
    })
}

fn coherence_report(a: &CoherenceArgs) -> Result<Payload, CliError> {
    let form = coherence::CoherenceEffectiveForm::new(a.lambda, a.t, a.theta, a.phi1, a.phi2)?;
    let brute = coherence::coherence_effective_channel(a.lambda, a.t, a.theta, a.phi1, a.phi2)?;
    let plain = coherence::coherence_trace_out(a.lambda, a.t)?;
    let m = form.tmatrix().matrix();
    let mut csv = String::from("row,c0,c1,c2,c3\n");
    for i in 0..4 {
        let mut cells = vec![i.to_string()];
        cells.extend((0..4).map(|j| fmt_g12(m[(i, j)])));
        csv.push_str(&csv_line(&cells));
    }
    let cplx = |z: switchlab::linalg::C64| [z.re, z.im];
    Ok(Payload {
        json: json!({
            "params": {"lambda": a.lambda, "t": a.t, "theta": a.theta, "phi1": a.phi1, "phi2": a.phi2},
            "tmatrix": rows(m),
            "closed_form_vs_joint_state": form.tmatrix().max_abs_diff(&brute),
            "t1": form.t1,
            "t2": cplx(form.t2),
            "eta": form.eta,
            "gamma": form.gamma.map(cplx),
            "coherence_breaking": switchlab::classify::is_coherence_breaking(form.tmatrix()),
            "trace_out_tmatrix": rows(plain.matrix()),
        }),
        csv: Some(csv),
    })
}

fn noisy_sweep(a: &NoisyArgs) -> Result<Payload, CliError> {
    if a.steps == 0 {
        return Err(CliError::Usage("--steps must be at least 1".into()));
    }
    let ts = grid(-1.0 / 3.0, 1.0, a.steps);
    let op = ControlledOp::default_correction();
    let mut out = Vec::with_capacity(ts.len());
    let mut csv = String::from("t,T11,T22,T33\n");
    for &t in &ts {
        let eff = noisy_control_effective(presets::perfect().kraus(), t, &op, &default_control())?;
        let d = [1, 2, 3].map(|i| eff.tmatrix().entry(i, i));
        csv.push_str(&csv_line(&[fmt_g12(t), fmt_g12(d[0]), fmt_g12(d[1]), fmt_g12(d[2])]));
        out.push(json!({"t": t, "diagonal": d, "tmatrix": rows(eff.tmatrix().matrix())}));
    }
    Ok(Payload {
        json: json!({"channel": "perfect", "rows": out}),
        csv: Some(csv),
    })
}

fn family(s: &str) -> Result<Family, CliError> {
    Family::parse(s).map_err(|e| CliError::Usage(e.to_string()))
}

fn flags_code(f: &switchlab::classify::SwitchUsefulness) -> String {
    format!("{}{}{}", bit(f.useless_plain), bit(f.useful_under_plus), bit(f.useful_under_minus))
}

fn record_csv(records: &[scan::ConcatRecord], seed: u64) -> String {
    let names = records.first().map(|r| r.family.parameter_names()).unwrap_or(["p1", "p2", "p3"]);
    let mut header = vec!["family".to_string(), "seed".to_string()];
    for prefix in ["a", "b", "ab"] {
        header.extend(names.iter().map(|n| format!("{prefix}_{n}")));
    }
    header.extend(["input", "output", "flags_a", "flags_b", "flags_ab", "distance"].map(String::from));
    let mut csv = csv_line(&header);
    for rec in records {
        let mut cells = vec![rec.family.name().to_string(), seed.to_string()];
        for p in [rec.a, rec.b, rec.ab] {
            cells.extend(p.iter().map(|&x| fmt_g12(x)));
        }
        cells.push(enum_name(&rec.input));
        cells.push(enum_name(&rec.output));
        cells.extend([&rec.flags_a, &rec.flags_b, &rec.flags_ab].map(flags_code));
        cells.push(fmt_g12(rec.distance));
        csv.push_str(&csv_line(&cells));
    }
    csv
}

fn enum_name<T: serde::Serialize>(v: &T) -> String {
    serde_json::to_value(v).ok().and_then(|v| v.as_str().map(String::from)).unwrap_or_default()
}

fn scan_cmd(kind: &ScanKind, samples: Option<u64>, seed: u64) -> Result<Payload, CliError> {
    match kind {
        ScanKind::Octahedron { branch } => {
            let count = samples.unwrap_or(OCTAHEDRON_DEFAULT);
            let cfg = scan::ScanConfig::new(Family::Pauli, count, seed).map_err(|e| CliError::Usage(e.to_string()))?;
            let b = match branch {
                BranchArg::Plus => Branch::Plus,
                BranchArg::Minus => Branch::Minus,
            };
            let data = scan::octahedron_mapping_dataset(cfg.seed, cfg.sample_count, b)?;
            let mut csv = String::from("l1,l2,l3,out1,out2,out3,useful\n");
            for row in &data {
                let mut cells: Vec<String> = row.lambda_in.iter().map(|&x| fmt_g12(x)).collect();
                match row.lambda_out {
                    Some(o) => cells.extend(o.iter().map(|&x| fmt_g12(x))),
                    None => cells.extend(["", "", ""].map(String::from)),
                }
                cells.push(bit(row.useful));
                csv.push_str(&csv_line(&cells));
            }
            let useful = data.iter().filter(|r| r.useful).count();
            Ok(Payload {
                json: json!({
                    "config": cfg,
                    "branch": b.name(),
                    "rng": switchlab::random::RNG_NAME,
                    "sampling_measure": scan::SAMPLING_MEASURE,
                    "useful_count": useful,
                    "rows": data,
                }),
                csv: Some(csv),
            })
        }
        ScanKind::Census { family: f } => {
            let fam = family(f)?;
            let count = samples.unwrap_or(CENSUS_DEFAULT);
            let cfg = scan::ScanConfig::new(fam, count, seed).map_err(|e| CliError::Usage(e.to_string()))?;
            let out = scan::concat_census(fam, cfg.sample_count, cfg.seed)?;
            Ok(Payload {
                csv: Some(record_csv(&out.records, seed)),
                json: json!({"config": cfg, "summary": out.summary, "records": out.records}),
            })
        }
        ScanKind::Conjecture { family: f } => {
            let fam = family(f)?;
            let count = samples.unwrap_or(CENSUS_DEFAULT);
            let cfg = scan::ScanConfig::new(fam, count, seed).map_err(|e| CliError::Usage(e.to_string()))?;
            let report = scan::conjecture_search(fam, cfg.sample_count, cfg.seed)?;
            Ok(Payload {
                csv: Some(record_csv(&report.counterexamples, seed)),
                json: json!({"config": cfg, "report": report}),
            })
        }
    }
}
