//! Acceptance criteria for switchlab. Each criterion is a function returning a
//! PASS/FAIL verdict with its measured deviations; the `acceptance` test target
//! and the `selftest` command both run them.

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, SQRT_2};
use std::time::{Duration, Instant};

use rayon::prelude::*;

use switchlab::classify::{is_entanglement_breaking, pauli_ebc_margin, UselessPredicate};
use switchlab::linalg::{contract_second, max_abs_diff, pauli, r, CMat2, Ket2};
use switchlab::qchannel::{presets, Channel, ChoiMatrix, DensityMatrix, KrausSet, PauliChannel, TMatrix};
use switchlab::random::{self, substream};
use switchlab::scan::{self, mapping::minus_plane_offset, Branch, Family};
use switchlab::switch::{
    branch_maps, default_control, effective_channel, joint_operator, noisy_control_effective,
    pauli_branches, switch_kraus, ControlledOp,
};
use switchlab::tasks::{bisect, coherence, grid, qrac, steering, ROOT_TOL};

pub const DEFAULT_SEED: u64 = 1729;

#[derive(Clone, Debug)]
pub struct CriterionResult {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
    pub budget: Duration,
}

impl CriterionResult {
    pub fn line(&self) -> String {
        format!(
            "{} [{:>2}] {}: {} ({:.2} s, budget {} s)",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.detail,
            self.elapsed.as_secs_f64(),
            self.budget.as_secs()
        )
    }
}

fn timed(
    id: u8,
    name: &'static str,
    budget_s: u64,
    f: impl FnOnce() -> (bool, String),
) -> CriterionResult {
    let start = Instant::now();
    let (ok, detail) = f();
    let elapsed = start.elapsed();
    let budget = Duration::from_secs(budget_s);
    CriterionResult {
        id,
        name,
        passed: ok && elapsed <= budget,
        detail,
        elapsed,
        budget,
    }
}

fn plus_ket() -> Ket2 {
    Ket2::new(r(FRAC_1_SQRT_2), r(FRAC_1_SQRT_2))
}

fn minus_ket() -> Ket2 {
    Ket2::new(r(FRAC_1_SQRT_2), r(-FRAC_1_SQRT_2))
}

/// Branch maps read off the joint switch output with ω = |+⟩⟨+|:
/// `C₊(x) = ⟨+|S(x ⊗ ω)|+⟩`, `C₋(x) = ⟨−|S(x ⊗ ω)|−⟩`.
fn joint_branch_chois(ch: &KrausSet) -> (ChoiMatrix, ChoiMatrix) {
    let kraus = switch_kraus(ch);
    let omega = *default_control().as_qubit().expect("qubit");
    let read = |v: Ket2| {
        ChoiMatrix::from_map(|x| contract_second(&joint_operator(&kraus, x, &omega), &v, &v))
    };
    (read(plus_ket()), read(minus_ket()))
}

fn corrected_phi(lambda3: f64) -> Channel {
    let ch = presets::phi(lambda3).expect("λ₃ in [-1, 1]");
    effective_channel(ch.kraus(), &ControlledOp::default_correction(), &default_control())
        .expect("effective channel is trace preserving")
}

fn corrected_phi_tmatrix(l: f64) -> TMatrix {
    let a = (1.0 + l) * (1.0 + l) / 4.0;
    TMatrix::diagonal([a, a, l * l])
}

pub fn criterion_01(seed: u64) -> CriterionResult {
    timed(1, "closed-form Pauli branches vs joint switch output", 10, || {
        let mut rng = substream(seed, 1);
        let states: Vec<DensityMatrix> = (0..100).map(|_| random::mixed_state(&mut rng)).collect();
        let channels: Vec<PauliChannel> = (0..1000).map(|_| random::pauli_channel(&mut rng)).collect();
        let worst = channels
            .par_iter()
            .map(|p| {
                let (plus, minus) = pauli_branches(p).cp_maps();
                let (jp, jm) = joint_branch_chois(&KrausSet::new(p.kraus()));
                let mut worst = max_abs_diff(plus.choi().matrix(), jp.matrix())
                    .max(max_abs_diff(minus.choi().matrix(), jm.matrix()));
                for rho in &states {
                    let m = rho.as_qubit().expect("qubit");
                    worst = worst
                        .max(max_abs_diff(&plus.apply_operator(m), &jp.apply(m)))
                        .max(max_abs_diff(&minus.apply_operator(m), &jm.apply(m)));
                }
                worst
            })
            .reduce(|| 0.0, f64::max);
        (
            worst <= 1e-9,
            format!("1000 channels x 100 states, max deviation {worst:.2e} (tol 1e-9)"),
        )
    })
}

pub fn criterion_02() -> CriterionResult {
    timed(2, "perfect communication through the corrected switch", 1, || {
        let eff = effective_channel(
            presets::perfect().kraus(),
            &ControlledOp::default_correction(),
            &default_control(),
        )
        .expect("trace preserving");
        let dev = eff.tmatrix().max_abs_diff(&TMatrix::identity());
        (dev <= 1e-12, format!("|T - I| = {dev:.2e} (tol 1e-12)"))
    })
}

pub fn criterion_03() -> CriterionResult {
    timed(3, "dephasing channel: q = 1, plus branch = input, minus branch = 0", 1, || {
        let p = PauliChannel::new([0.5, 0.0, 0.0, 0.5]).expect("valid");
        let br = pauli_branches(&p);
        let q_dev = (br.q - 1.0).abs();
        let plus_dev = br
            .c_plus
            .probs()
            .iter()
            .zip(p.probs())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        let (_, minus) = branch_maps(presets::obs1().kraus());
        let (_, joint_minus) = joint_branch_chois(presets::obs1().kraus());
        let minus_dev = switchlab::linalg::max_abs(minus.choi().matrix())
            .max(switchlab::linalg::max_abs(joint_minus.matrix()));
        let ok = q_dev <= 1e-12 && plus_dev <= 1e-12 && minus_dev <= 1e-12 && br.c_minus.is_zero();
        (
            ok,
            format!(
                "|q-1| = {q_dev:.1e}, |C+ - input| = {plus_dev:.1e}, |Choi(C-)| = {minus_dev:.1e} (tol 1e-12)"
            ),
        )
    })
}

pub fn criterion_04() -> CriterionResult {
    timed(4, "corrected switch on the z-contracting EBC", 1, || {
        let mut ok = true;
        let mut parts = Vec::new();
        for l in [0.2, 0.5, 0.9] {
            let eff = corrected_phi(l);
            let dev = eff.tmatrix().max_abs_diff(&corrected_phi_tmatrix(l));
            let is_ebc = is_entanglement_breaking(eff.kraus()).expect("CP");
            let margin = pauli_ebc_margin([
                eff.tmatrix().entry(1, 1),
                eff.tmatrix().entry(2, 2),
                eff.tmatrix().entry(3, 3),
            ]);
            let expect_ebc = l <= 1.0 / 3.0;
            ok &= dev <= 1e-10 && is_ebc == expect_ebc && (margin <= 1e-9) == expect_ebc;
            parts.push(format!("l3={l}: dev {dev:.1e}, EB={is_ebc}, margin {margin:+.4}"));
        }
        let boundary = corrected_phi(1.0 / 3.0);
        let boundary_ebc = is_entanglement_breaking(boundary.kraus()).expect("CP");
        ok &= boundary_ebc;
        parts.push(format!("l3=1/3: EB={boundary_ebc}"));
        (ok, parts.join("; "))
    })
}

pub fn criterion_05() -> CriterionResult {
    timed(5, "QRAC curve and classical-bound crossing", 1, || {
        let strategy = qrac::QracStrategy::standard();
        let success = |l: f64| qrac::qrac_success(&strategy, &corrected_phi(l)).expect("qubit");
        let worst = grid(0.0, 1.0, 1000)
            .par_iter()
            .map(|&l| (success(l) - qrac::corrected_phi_success(l)).abs())
            .reduce(|| 0.0, f64::max);
        let root = bisect(|l| success(l) - 0.75, 0.0, 1.0, ROOT_TOL).expect("bracketed");
        let exact = 2f64.powf(0.75) - 1.0;
        let root_dev = (root - exact).abs();
        (
            worst <= 1e-10 && root_dev <= 1e-9,
            format!(
                "curve max dev {worst:.1e} (tol 1e-10); root {root:.10} vs 2^(3/4)-1, dev {root_dev:.1e} (tol 1e-9)"
            ),
        )
    })
}

/// Target curve for criterion 6: `(1+λ)²√2/4 + (3λ²−2λ−1)/4`.
pub fn steering_target_curve(l: f64) -> f64 {
    (1.0 + l).powi(2) * SQRT_2 / 4.0 + (3.0 * l * l - 2.0 * l - 1.0) / 4.0
}

pub const STEERING_TARGET_ROOT: f64 = 0.8123;

pub fn criterion_06() -> CriterionResult {
    timed(6, "steering curve and F = 1 crossing", 1, || {
        let phi_plus = DensityMatrix::phi_plus();
        let f = |l: f64| {
            steering::steering_f(&steering::steered_state(&corrected_phi(l), &phi_plus).expect("4x4"))
                .expect("4x4")
        };
        let (worst_target, worst_state_formula) = grid(0.0, 1.0, 1000)
            .par_iter()
            .map(|&l| {
                let v = f(l);
                ((v - steering_target_curve(l)).abs(), (v - steering::corrected_phi_f(l)).abs())
            })
            .reduce(|| (0.0, 0.0), |a, b| (a.0.max(b.0), a.1.max(b.1)));
        let root = bisect(|l| f(l) - 1.0, 0.0, 1.0, ROOT_TOL).expect("bracketed");
        let root_dev = (root - STEERING_TARGET_ROOT).abs();
        (
            worst_target <= 1e-10 && root_dev <= 5e-4,
            format!(
                "max dev from target curve {worst_target:.3e} (tol 1e-10); root {root:.6} vs {STEERING_TARGET_ROOT} (tol 5e-4); \
                 computed F equals ((1+l)^2/4 + l^2)/sqrt2 within {worst_state_formula:.1e}"
            ),
        )
    })
}

pub fn criterion_07(seed: u64) -> CriterionResult {
    timed(7, "PPT verdict vs octahedron criterion on the tetrahedron", 30, || {
        let n = 100_000u64;
        let parts: Vec<(u64, u64)> = (0..n.div_ceil(scan::CHUNK))
            .into_par_iter()
            .map(|k| {
                let mut rng = substream(seed ^ 0x07, k);
                let len = scan::CHUNK.min(n - k * scan::CHUNK);
                let mut disagree = 0;
                let mut excluded = 0;
                for _ in 0..len {
                    let p = random::pauli_channel(&mut rng);
                    let margin = pauli_ebc_margin(p.lambdas());
                    if margin.abs() < 1e-7 {
                        excluded += 1;
                        continue;
                    }
                    let ppt = is_entanglement_breaking(&KrausSet::new(p.kraus())).expect("CP");
                    if ppt != (margin <= 0.0) {
                        disagree += 1;
                    }
                }
                (disagree, excluded)
            })
            .collect();
        let disagree: u64 = parts.iter().map(|p| p.0).sum();
        let excluded: u64 = parts.iter().map(|p| p.1).sum();
        (
            disagree == 0,
            format!("{n} samples, {excluded} in boundary band, {disagree} disagreements"),
        )
    })
}

pub fn criterion_08(seed: u64) -> CriterionResult {
    timed(8, "no controlled operation rescues channels with EB branches", 60, || {
        let mut rng = substream(seed ^ 0x08, 0);
        let mut channels = Vec::with_capacity(100);
        let mut drawn = 0u64;
        while channels.len() < 100 {
            drawn += 1;
            // alternate general random channels and Pauli channels
            let ch = if drawn.is_multiple_of(2) {
                random::any_channel(&mut rng)
            } else {
                random::pauli_channel(&mut rng).channel()
            };
            let (p, m) = branch_maps(ch.kraus());
            if is_entanglement_breaking(&p).expect("CP") && is_entanglement_breaking(&m).expect("CP") {
                channels.push(ch);
            }
        }
        let violations: u64 = channels
            .par_iter()
            .enumerate()
            .map(|(i, ch)| {
                let mut rng = substream(seed ^ 0x08, 1 + i as u64);
                let (plus, minus) = branch_maps(ch.kraus());
                let mut bad = 0;
                for _ in 0..500 {
                    let op = random::controlled_op(&mut rng);
                    let omega = random::mixed_state(&mut rng);
                    let eff = op.effective_map(&plus, &minus, omega.as_qubit().expect("qubit"));
                    if !is_entanglement_breaking(&eff).expect("CP") {
                        bad += 1;
                    }
                }
                bad
            })
            .sum();
        (
            violations == 0,
            format!("100 channels ({drawn} drawn) x 500 operations, {violations} violations"),
        )
    })
}

pub fn criterion_09() -> CriterionResult {
    timed(9, "depolarized control on the perfect channel", 1, || {
        let z = pauli(3);
        let mut worst: f64 = 0.0;
        for t in [-1.0 / 3.0, 0.0, 0.5, 1.0] {
            let eff = noisy_control_effective(
                presets::perfect().kraus(),
                t,
                &ControlledOp::default_correction(),
                &default_control(),
            )
            .expect("valid noise");
            let expected = ChoiMatrix::from_map(|x: &CMat2| {
                x * r((1.0 + t) / 2.0) + z * x * z * r((1.0 - t) / 2.0)
            });
            worst = worst.max(max_abs_diff(eff.choi().matrix(), expected.matrix()));
        }
        (worst <= 1e-10, format!("max Choi deviation {worst:.1e} over t in {{-1/3, 0, 0.5, 1}} (tol 1e-10)"))
    })
}

pub fn criterion_10() -> CriterionResult {
    timed(10, "coherence-breaking channel through switch and controlled unitary", 5, || {
        let mut worst = [0.0f64; 3];
        let mut worst_full_t = 0.0f64;
        let mut worst_trace_out = 0.0f64;
        let mut points = 0;
        let g = grid(-1.0, 1.0, 20);
        for &l in &g {
            for &t in &g {
                if l.abs() + t.abs() > 1.0 + 1e-12 {
                    continue;
                }
                // snap onto the CP region boundary against grid rounding
                let t = t.clamp(-(1.0 - l.abs()), 1.0 - l.abs());
                points += 1;
                let m = coherence::coherence_effective_channel(l, t, 0.0, FRAC_PI_2, 0.0).expect("CP");
                worst[0] = worst[0].max((m.entry(3, 3) - l * l).abs());
                worst[1] = worst[1].max((m.entry(3, 0) - t * (1.0 + l) / 2.0).abs());
                let g11 = (1.0 - 2.0 * l + l * l - t * t) / 4.0;
                worst[2] = worst[2]
                    .max((m.entry(1, 1) - g11).abs())
                    .max((m.entry(2, 2) - g11).abs());
                worst_full_t = worst_full_t.max((m.entry(3, 0) - t * (1.0 + l)).abs());
                let plain = coherence::coherence_trace_out(l, t).expect("CP");
                worst_trace_out = worst_trace_out
                    .max(plain.max_abs_diff(&TMatrix::coherence_breaking(t * (1.0 + l), l * l)));
            }
        }
        let ok = worst.iter().all(|&w| w <= 1e-9) && worst_trace_out <= 1e-9;
        (
            ok,
            format!(
                "{points} grid points; |T33 - l^2| {:.1e}, |T30 - t(1+l)/2| {:.3e}, |T11,T22 - (1-2l+l^2-t^2)/4| {:.1e}, \
                 plain trace-out {worst_trace_out:.1e} (tol 1e-9); computed T30 equals t(1+l) within {worst_full_t:.1e}",
                worst[0], worst[1], worst[2]
            ),
        )
    })
}

pub fn criterion_11(seed: u64) -> CriterionResult {
    timed(11, "concatenation census statistics and completely-useless search", 600, || {
        let out = scan::concat_census(Family::Pauli, 1_000_000, seed).expect("census");
        let s = &out.summary;
        let plus = s.plus_distances.as_ref().map(|d| (d.mean, d.count));
        let minus = s.minus_distances.as_ref().map(|d| (d.mean, d.count));
        let plus_ok = plus.is_some_and(|(m, _)| (1.18..=1.38).contains(&m));
        let minus_ok = minus.is_some_and(|(m, _)| (1.11..=1.31).contains(&m));
        let totals = s.output_totals();
        let venn_ok = totals.iter().all(|&n| n > 0);
        let search = scan::conjecture_search(Family::Pauli, 1_000_000, seed ^ 0x0C).expect("search");
        let search_ok = search.counterexample_count == 0 || !search.counterexamples.is_empty();
        let fmt = |x: Option<(f64, u64)>| match x {
            Some((m, n)) => format!("{m:.4} over {n}"),
            None => "none".into(),
        };
        (
            plus_ok && minus_ok && venn_ok && search_ok,
            format!(
                "plus mean {} in [1.18,1.38]; minus mean {} in [1.11,1.31]; outputs plus/minus/both/neither = {:?}; \
                 {} completely useless pairs, {} counterexamples",
                fmt(plus),
                fmt(minus),
                totals,
                search.pairs_tested,
                search.counterexample_count
            ),
        )
    })
}

pub fn criterion_12(seed: u64) -> CriterionResult {
    timed(12, "minus-branch images lie on the l1+l2+l3 = -1 plane", 30, || {
        let rows = scan::octahedron_mapping_dataset(seed ^ 0x12, 200_000, Branch::Minus).expect("dataset");
        let useful: Vec<_> = rows.iter().filter(|r| r.useful).collect();
        let off = useful
            .iter()
            .filter(|r| minus_plane_offset(r.lambda_out.expect("useful rows are nonzero")) > 1e-9)
            .count();
        (
            !useful.is_empty() && off == 0,
            format!("{} useful images of {} samples, {off} off the plane (tol 1e-9)", useful.len(), rows.len()),
        )
    })
}

/// Every criterion in order.
pub fn run_all(seed: u64) -> Vec<CriterionResult> {
    vec![
        criterion_01(seed),
        criterion_02(),
        criterion_03(),
        criterion_04(),
        criterion_05(),
        criterion_06(),
        criterion_07(seed),
        criterion_08(seed),
        criterion_09(),
        criterion_10(),
        criterion_11(seed),
        criterion_12(seed),
    ]
}

/// Default predicate used by the suite; recorded for reports.
pub const PREDICATE: UselessPredicate = UselessPredicate::EntanglementBreaking;
