//! Command implementations.
//!
//! Each command returns `Ok(true)` when every check passed, `Ok(false)` on
//! a check failure, and `Err(message)` for usage errors (bad configuration,
//! unparsable specs, unwritable output).

use std::env;
use std::thread;

use qfock::fock::{
    apply_h, apply_torus, apply_x, apply_x_divided, character, character_totals,
    enumerate_basis, term_energy, FockVector,
};
use qfock::qarith::RatPoly;
use qfock::rootdata::{QElement, RootDatum};
use qfock::rootsofunity::{
    dual_heisenberg, heisenberg_kernel, singular_vector_search, specialized_dimensions,
};
use qfock::symcore::ColoredPartition;
use qfock::verify::drinfeld::verify_drinfeld;
use qfock::verify::identities::{
    verify_lemma_id, verify_rfact_divisibility, verify_rfact_expansion,
};
use qfock::verify::product::verify_product_formula;

use crate::args::{
    ActArgs, CharacterArgs, Command, DatumArgs, RootSuite, RootdataArgs, RootofunityArgs,
    VerifyArgs, VerifySuite,
};
use crate::grammar::{parse_operator, parse_state, OperatorSpec};
use crate::report::{
    CaseLine, DatumLine, DetCheckLine, ErrorLine, IrreducibleLine, Report, ScanLine,
    SingularLine, Style, TermCountLine, TermLine, TotalsLine, WeightLine,
};

pub fn dispatch(command: Command) -> Result<bool, String> {
    type Runner<'a> = Box<dyn FnOnce(&mut Report) -> Result<bool, String> + 'a>;
    let (output, runner): (_, Runner) = match command {
        Command::Rootdata(RootdataArgs { datum, l, output }) => {
            (output, Box::new(move |rep| cmd_rootdata(datum, l, rep)))
        }
        Command::Act(ActArgs { datum, ops, state, output }) => {
            (output, Box::new(move |rep| cmd_act(datum, &ops, state.as_deref(), rep)))
        }
        Command::Character(CharacterArgs { datum, depth, output }) => {
            (output, Box::new(move |rep| cmd_character(datum, depth, rep)))
        }
        Command::Verify(args) => {
            let VerifyArgs { suite, family, rank, r, depth, rmax, output } = args;
            (output, Box::new(move |rep| cmd_verify(suite, family, rank, r, depth, rmax, rep)))
        }
        Command::Rootofunity(RootofunityArgs { datum, l, depth, suite, output }) => {
            (output, Box::new(move |rep| cmd_rootofunity(datum, l, depth, suite, rep)))
        }
    };
    let style = if output.human { Style::Human } else { Style::Json };
    let mut rep = Report::new(style);
    let ok = runner(&mut rep)?;
    rep.flush(output.out.as_deref()).map_err(|e| format!("cannot write output: {e}"))?;
    Ok(ok)
}

fn make_datum(args: DatumArgs) -> Result<RootDatum, String> {
    RootDatum::new(args.family.into(), args.rank).map_err(|e| e.to_string())
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 { a } else { gcd(b, a % b) }
}

/// Emits the coprimality warning when it fails; returns whether it holds.
fn warn_coprime(datum: &RootDatum, l: u32) -> bool {
    let n = datum.coxeter();
    let coprime = gcd(l, n) == 1;
    if !coprime {
        eprintln!(
            "warning: gcd(l = {l}, coxeter number {n}) != 1; the graded determinant \
             vanishes at some power of the root of unity"
        );
    }
    coprime
}

/// Worker count for suite parallelism: QFOCK_THREADS, else the number of
/// available cores.
fn thread_count() -> usize {
    env::var("QFOCK_THREADS")
        .ok()
        .and_then(|s| s.parse::<usize>().ok())
        .filter(|&n| n >= 1)
        .unwrap_or_else(|| thread::available_parallelism().map_or(1, |p| p.get()))
}

/// Short name of the closed determinant form, e.g. `[3]` for rank-two
/// type A.
fn det_label(datum: &RootDatum) -> String {
    use qfock::rootdata::Family;
    match (datum.family(), datum.rank()) {
        (Family::A, n) => format!("[{}]", n + 1),
        (Family::D, n) => format!("[2](q^{}+q^-{})", n - 1, n - 1),
        (Family::E, 6) => "(q^4+q^-4-1)(q^2+q^-2+1)".to_string(),
        (Family::E, 7) => "[2](q^6+q^-6-1)".to_string(),
        (Family::E, _) => "q^8+q^6-q^2-1-q^-2+q^-6+q^-8".to_string(),
    }
}

fn det_check_lines(datum: &RootDatum, l: u32) -> Vec<DetCheckLine> {
    datum
        .detq_scan(l, 2 * l)
        .into_iter()
        .map(|c| DetCheckLine { k: c.k, value: c.value.to_string(), zero: c.is_zero })
        .collect()
}

fn cmd_rootdata(datum: DatumArgs, l: Option<u32>, rep: &mut Report) -> Result<bool, String> {
    let datum = make_datum(datum)?;
    let det = datum.qcartan_det();
    let closed_matches =
        det == datum.qcartan_det_closed_form() && det == datum.qcartan_det_bareiss();
    let label = det_label(&datum);
    let line = DatumLine {
        family: datum.family().to_string(),
        rank: datum.rank(),
        coxeter: datum.coxeter(),
        positive_roots: datum.positive_roots().len(),
        det: det.to_string(),
        det_label: label.clone(),
        closed_matches,
    };
    let agree = if closed_matches { "agree" } else { "DISAGREE" };
    rep.record(
        &line,
        format!(
            "{}{}: coxeter {}, {} positive roots, det[A] = {} = {} (cofactor, \
             fraction-free, closed form {})",
            line.family, line.rank, line.coxeter, line.positive_roots, line.det, label, agree
        ),
    );
    let mut ok = closed_matches;
    if let Some(l) = l.filter(|&l| l >= 1) {
        let coprime = warn_coprime(&datum, l);
        let checks = det_check_lines(&datum, l);
        let zeros: Vec<u32> = checks.iter().filter(|c| c.zero).map(|c| c.k).collect();
        let human = if zeros.is_empty() {
            format!("scan l={l}: no zeros for k = 1..={}", 2 * l)
        } else {
            format!("scan l={l}: zeros at k in {zeros:?}")
        };
        rep.record(&ScanLine { l, coprime, det_checks: checks }, human);
        if coprime {
            ok &= zeros.is_empty();
        }
    }
    Ok(ok)
}

fn cmd_act(
    datum: DatumArgs,
    ops: &[String],
    state: Option<&str>,
    rep: &mut Report,
) -> Result<bool, String> {
    let datum = make_datum(datum)?;
    let rank = datum.rank();
    let mut parsed = Vec::new();
    for raw in ops {
        let spec = parse_operator(raw, rank).map_err(|e| format!("--op `{raw}`: {e}"))?;
        parsed.push((spec, raw));
    }
    let (part, eta) = match state {
        Some(s) => parse_state(s, rank).map_err(|e| format!("--state `{s}`: {e}"))?,
        None => (ColoredPartition::empty(rank), QElement::new(vec![0; rank])),
    };
    let mut v = FockVector::basis_vector(part, eta, RatPoly::one());
    for (spec, raw) in parsed {
        v = match spec {
            OperatorSpec::X { sign, node, n, r: 1 } => apply_x(&datum, node, sign, n, &v),
            OperatorSpec::X { sign, node, n, r } => {
                match apply_x_divided(&datum, node, sign, n, r, &v) {
                    Ok(w) => w,
                    Err(e) => {
                        let msg = format!("`{raw}`: {e}");
                        rep.record(&ErrorLine { error: msg.clone() }, format!("error: {msg}"));
                        return Ok(false);
                    }
                }
            }
            OperatorSpec::H { node, k } => apply_h(&datum, node, k, &v),
            OperatorSpec::Torus(op) => apply_torus(&datum, op, &v),
        };
    }
    for ((p, e), c) in v.terms() {
        let energy = term_energy(&datum, p, e);
        rep.record(
            &TermLine {
                state: format!("{p} @ eta={e}"),
                coeff: c.to_string(),
                energy,
                weight: e.coords().to_vec(),
            },
            format!("({c}) * {p} @ eta={e}   energy={energy}"),
        );
    }
    rep.record(&TermCountLine { terms: v.num_terms() }, format!("{} terms", v.num_terms()));
    Ok(true)
}

fn cmd_character(datum: DatumArgs, depth: u32, rep: &mut Report) -> Result<bool, String> {
    let datum = make_datum(datum)?;
    for (label, mult) in &character(&datum, depth) {
        rep.record(
            &WeightLine {
                eta: label.eta.coords().to_vec(),
                energy: label.energy,
                mult: *mult,
            },
            format!("eta={}  energy={}  mult={}", label.eta, label.energy, mult),
        );
    }
    let totals = character_totals(&datum, depth);
    rep.record(&TotalsLine { totals: totals.clone() }, format!("totals by energy: {totals:?}"));
    Ok(true)
}

fn id_cases(rmax: u32) -> Vec<CaseLine> {
    (1..=rmax.max(1))
        .map(|r| CaseLine::new("id", format!("r={r}"), verify_lemma_id(r as usize)))
        .collect()
}

fn rfact_cases(rmax: u32) -> Vec<CaseLine> {
    let mut out = Vec::new();
    for r in 2..=rmax.max(2) {
        out.push(CaseLine::new(
            "rfact",
            format!("expansion r={r}"),
            verify_rfact_expansion(r as usize),
        ));
        out.push(CaseLine::new(
            "rfact",
            format!("divisibility r={r} deg<=4"),
            verify_rfact_divisibility(r as usize, 4),
        ));
    }
    out
}

fn drinfeld_cases(datum: &RootDatum, depth: u32, rmax: u32) -> Vec<CaseLine> {
    verify_drinfeld(datum, depth, rmax as i64)
        .into_iter()
        .map(|r| CaseLine {
            suite: "drinfeld",
            case: r.relation,
            status: if r.failures == 0 { "pass" } else { "fail" },
            residual_terms: (r.failures > 0).then_some(r.failures),
        })
        .collect()
}

fn product_cases(datum: &RootDatum, depth: u32, rmax: u32) -> Vec<CaseLine> {
    let basis = enumerate_basis(datum, depth);
    let pairs: Vec<(usize, u32)> = (0..datum.rank())
        .flat_map(|i| (1..=rmax.max(1)).map(move |r| (i, r)))
        .collect();
    let stride = thread_count().min(pairs.len()).max(1);
    let mut flags = vec![true; pairs.len()];
    thread::scope(|scope| {
        let mut handles = Vec::new();
        for w in 0..stride {
            let pairs = &pairs;
            let basis = &basis;
            handles.push(scope.spawn(move || {
                let mut local = Vec::new();
                let mut idx = w;
                while idx < pairs.len() {
                    let (i, r) = pairs[idx];
                    let ok = basis
                        .iter()
                        .all(|(p, e)| verify_product_formula(datum, i, r, p, e).ok);
                    local.push((idx, ok));
                    idx += stride;
                }
                local
            }));
        }
        for handle in handles {
            for (idx, ok) in handle.join().unwrap() {
                flags[idx] = ok;
            }
        }
    });
    pairs
        .iter()
        .zip(&flags)
        .map(|(&(i, r), &ok)| {
            CaseLine::new("product", format!("node={} r={r} depth<={depth}", i + 1), ok)
        })
        .collect()
}

fn cmd_verify(
    suite: VerifySuite,
    family: crate::args::FamilyArg,
    rank: usize,
    r: u32,
    depth: u32,
    rmax: u32,
    rep: &mut Report,
) -> Result<bool, String> {
    let needs_datum =
        matches!(suite, VerifySuite::Drinfeld | VerifySuite::Product | VerifySuite::All);
    let datum = if needs_datum {
        Some(make_datum(DatumArgs { family, rank })?)
    } else {
        None
    };
    let mut cases = Vec::new();
    match suite {
        VerifySuite::Id => cases.extend(id_cases(r)),
        VerifySuite::Rfact => cases.extend(rfact_cases(r)),
        VerifySuite::Drinfeld => cases.extend(drinfeld_cases(datum.as_ref().unwrap(), depth, rmax)),
        VerifySuite::Product => cases.extend(product_cases(datum.as_ref().unwrap(), depth, rmax)),
        VerifySuite::All => {
            let datum = datum.as_ref().unwrap();
            cases.extend(id_cases(r));
            cases.extend(rfact_cases(r));
            cases.extend(drinfeld_cases(datum, depth, rmax));
            cases.extend(product_cases(datum, depth, rmax));
        }
    }
    for case in &cases {
        rep.record(case, case.human());
    }
    let failed = cases.iter().filter(|c| c.status != "pass").count();
    rep.note(match failed {
        0 => format!("all {} checks passed", cases.len()),
        n => format!("{n} of {} checks FAILED", cases.len()),
    });
    Ok(failed == 0)
}

fn cmd_rootofunity(
    datum: DatumArgs,
    l: u32,
    depth: u32,
    suite: RootSuite,
    rep: &mut Report,
) -> Result<bool, String> {
    let datum = make_datum(datum)?;
    if l == 0 {
        return Err("--l must be at least 1".to_string());
    }
    warn_coprime(&datum, l);
    match suite {
        RootSuite::Irreducible => {
            let kernel_dims = heisenberg_kernel(&datum, l, depth);
            let singular = singular_vector_search(&datum, l, depth);
            let det_checks = det_check_lines(&datum, l);
            let det_zeros = det_checks.iter().filter(|c| c.zero).count();
            let dims = specialized_dimensions(&datum, depth);
            let totals = character_totals(&datum, depth);
            let dims_match = dims.iter().map(|&d| d as u64).eq(totals.iter().copied());
            let line = IrreducibleLine {
                family: datum.family().to_string(),
                rank: datum.rank(),
                l,
                depth,
                kernel_dims: kernel_dims.clone(),
                singular_found: !singular.is_empty(),
                det_checks,
            };
            rep.record(
                &line,
                format!(
                    "{}{} at l={l}, depth {depth}: joint kernels {kernel_dims:?}, {} singular \
                     vectors, {det_zeros} determinant zeros",
                    line.family,
                    line.rank,
                    singular.len()
                ),
            );
            for cand in &singular {
                rep.record(
                    &SingularLine { eta: cand.eta.coords().to_vec(), energy: cand.energy },
                    format!("singular vector: eta={} energy={}", cand.eta, cand.energy),
                );
            }
            let dim_case = CaseLine::new(
                "rootofunity",
                format!("specialized dimensions match generic up to depth {depth}"),
                dims_match,
            );
            rep.record(&dim_case, dim_case.human());
            Ok(kernel_dims.iter().all(|&d| d == 0)
                && singular.is_empty()
                && det_zeros == 0
                && dims_match)
        }
        RootSuite::Duals => {
            let mut ok = true;
            for k in 1..=depth {
                match dual_heisenberg(&datum, 0, k, l) {
                    Ok(_) => {
                        for i in 0..datum.rank() {
                            let pass = dual_heisenberg(&datum, i, k, l).is_ok();
                            ok &= pass;
                            let case =
                                CaseLine::new("duals", format!("node={} k={k}", i + 1), pass);
                            rep.record(&case, case.human());
                        }
                    }
                    Err(e) => {
                        eprintln!("{e}");
                        ok = false;
                        let case = CaseLine::new("duals", format!("k={k}"), false);
                        rep.record(&case, case.human());
                    }
                }
            }
            Ok(ok)
        }
    }
}
