use std::fs;
use std::path::Path;

use circlemm::fourreg::{
    parse_dow, parse_dow_file, CircuitPartition, Direction, EulerSystem, OrientedFundamentalCircuits,
};
use circlemm::isotropic::{shelters, SHELTER_BOUND};
use circlemm::multimatroid::{
    binary_refutation, h33, mm_isomorphic, s1, z2_of_matroid, z3_of_matroid, BinaryMatroidRep, CircuitList,
    SemiMultimatroid, REFUTATION_BOUND,
};
use circlemm::recognize::{find_obstruction, is_circle, matroid_is_planar, naji_from_signed, realize, CircleVerdict, NajiSolution};
use circlemm::signedias::{
    incidence_profile, naturality_check, replay_row_operations, signed_ias, signed_ias_based, three_circuits,
    transversal_determinants, DeterminantSweep, DET_SWEEP_BOUND, THREE_CIRCUIT_BOUND,
};
use circlemm::{Error, ExactMatrix, FieldSpec, LoopedGraph};
use serde_json::{json, Value};

use crate::golden::{self, BaseCase};
use crate::report::{InputDigest, RunReport, Timer};
use crate::{CmdResult, ExampleArgs, Failure, MmCommand, Outcome, RecognizeArgs, SignedArgs};

fn read(path: &Path) -> Result<(String, InputDigest), Failure> {
    let bytes = fs::read(path).map_err(|e| Failure::Other(format!("{}: {e}", path.display())))?;
    let digest = InputDigest::of(path.display().to_string(), &bytes);
    let text = String::from_utf8(bytes).map_err(|e| Failure::Other(format!("{}: {e}", path.display())))?;
    Ok((text, digest))
}

fn naji_json(s: &NajiSolution) -> Value {
    s.entries().into_iter().map(|(v, w, b)| json!({ "from": v, "to": w, "value": b })).collect()
}

fn edge_name(c: &EulerSystem, e: usize) -> String {
    let (a, b) = c.graph().ends(e);
    let (a, b) = (c.graph().label(a), c.graph().label(b));
    if a.chars().count() == 1 && b.chars().count() == 1 {
        format!("{a}{b}")
    } else {
        format!("{a}-{b}")
    }
}

pub fn cmd_recognize(a: &RecognizeArgs, timing: bool) -> CmdResult {
    let (text, digest) = read(&a.path)?;
    let g = LoopedGraph::parse_text(&text)?;
    let mut r = RunReport::new("recognize");
    r.inputs.push(digest);
    let mut t = Timer::new(timing);
    r.verdict("vertices", g.n());
    r.verdict("edges", g.edge_count());
    let verdict = t.time("naji", || is_circle(&g))?;
    let circle = verdict.is_circle();
    r.verdict("circle", circle);
    match &verdict {
        CircleVerdict::Circle(sol) => r.verdict("naji_solution", naji_json(sol)),
        CircleVerdict::NotCircle(cert) => r.verdict("certificate", cert),
    }
    let mut outcome = if circle { Outcome::Success } else { Outcome::Negative };
    if a.obstruction {
        let obs = t.time("obstruction", || find_obstruction(&g, a.budget))?;
        if let Some((name, w)) = obs.found.first() {
            let mut v = serde_json::to_value(w).expect("serializable");
            v["name"] = json!(name);
            r.verdict("obstruction", v);
        }
        let names: Vec<&str> = obs.found.iter().map(|(n, _)| n.as_str()).collect();
        r.verdict("obstructions_found", names);
        r.verdict("obstruction_search_complete", obs.complete);
        match (circle, obs.found.is_empty(), obs.complete) {
            (true, false, _) => return Err(Failure::Other("internal: obstruction found in a circle graph".into())),
            (false, true, true) => {
                return Err(Failure::Other("internal: complete search found no obstruction in a non-circle graph".into()))
            }
            (false, true, false) => {
                r.warnings.push(format!("obstruction search stopped at the budget of {}", a.budget));
                outcome = Outcome::Inconclusive;
            }
            _ => {}
        }
    }
    if a.realize {
        match t.time("realize", || realize(&g)) {
            Ok(words) => {
                if words.is_some() != circle {
                    return Err(Failure::Other("internal: realizer disagrees with the Naji system".into()));
                }
                r.verdict("realization", words);
            }
            Err(e @ Error::TooLarge { .. }) => r.warnings.push(format!("realization skipped: {e}")),
            Err(e) => return Err(e.into()),
        }
    }
    t.finish(&mut r);
    Ok((r, outcome))
}

fn sweep_json(sweep: &DeterminantSweep) -> Value {
    json!({
        "transversals": sweep.values.len(),
        "unimodular": sweep.unimodular,
        "worst": sweep.worst.to_string(),
    })
}

fn profile_json(circuits: &[[String; 3]], labels: &[String]) -> Value {
    let counts = incidence_profile(circuits, labels);
    labels.iter().zip(counts).map(|(l, k)| (l.clone(), json!(k))).collect::<serde_json::Map<_, _>>().into()
}

pub fn cmd_signed_ias(a: &SignedArgs, timing: bool) -> CmdResult {
    let (text, digest) = read(&a.path)?;
    let c = parse_dow_file(&text)?;
    let mut r = RunReport::new("signed-ias");
    r.inputs.push(digest);
    let mut t = Timer::new(timing);
    let gamma = if a.unbased {
        let choices: Vec<(usize, bool)> = (0..c.n()).map(|v| (c.occurrences(v).1[0], false)).collect();
        OrientedFundamentalCircuits::explicit(&c, &choices)?
    } else {
        let base = if a.base.is_empty() {
            c.wrap_edges()
        } else {
            a.base.iter().map(|b| c.edge_by_name(b)).collect::<circlemm::Result<Vec<_>>>()?
        };
        r.verdict("base_edges", base.iter().map(|&e| edge_name(&c, e)).collect::<Vec<_>>());
        OrientedFundamentalCircuits::based(&c, &base)?
    };
    let based = gamma.base().is_some();
    r.verdict("words", c.word_strings());
    r.verdict("based", based);
    let s = signed_ias(&c, &gamma)?;
    r.matrix("signed_ias", s.matrix());
    if a.require_unimodular && !based {
        r.warnings.push("fundamental circuits are not based; transversal determinants may leave {-1, 0, 1}".into());
    }
    if s.n() <= DET_SWEEP_BOUND {
        let sweep = t.time("determinants", || transversal_determinants(&s))?;
        r.verdict("unimodularity", sweep_json(&sweep));
    } else {
        r.warnings.push(format!("determinant sweep skipped above {DET_SWEEP_BOUND} vertices"));
    }
    if s.n() <= THREE_CIRCUIT_BOUND {
        let circuits = t.time("three_circuits", || three_circuits(&s, FieldSpec::Rational))?;
        r.verdict("three_circuit_profile", profile_json(&circuits, s.column_labels()));
        r.verdict("three_circuits", &circuits);
    }
    if s.n() <= SHELTER_BOUND {
        let m = s.matrix().reduce_to(a.field)?;
        let rep = t.time("shelters", || shelters(&m, &c.interlacement(), 3, true))?;
        r.verdict("shelters", json!({ "field": a.field.to_string(), "report": rep }));
        if a.field != FieldSpec::Rational {
            r.matrix("signed_ias_reduced", &m);
        }
    }
    r.verdict("naji_solution", naji_json(&naji_from_signed(&s)?));
    t.finish(&mut r);
    Ok((r, Outcome::Success))
}

fn golden_matrix(rows: &[[i64; 12]; 4], like: &ExactMatrix) -> Result<ExactMatrix, Failure> {
    let rows: Vec<Vec<i64>> = rows.iter().map(|r| r.to_vec()).collect();
    Ok(ExactMatrix::from_ints(like.row_labels(), like.col_labels(), &rows, FieldSpec::Rational)?)
}

fn matrix_diff(name: &str, got: &ExactMatrix, want: &ExactMatrix) -> Vec<String> {
    if got.row_labels() != want.row_labels() || got.col_labels() != want.col_labels() {
        return vec![format!("{name}: labels differ")];
    }
    let mut out = Vec::new();
    for i in 0..got.nrows() {
        for j in 0..got.ncols() {
            if got.entry(i, j) != want.entry(i, j) {
                out.push(format!(
                    "{name}[{}, {}]: expected {}, got {}",
                    got.row_labels()[i],
                    got.col_labels()[j],
                    want.entry(i, j),
                    got.entry(i, j)
                ));
            }
        }
    }
    out
}

fn is_rotation(a: &str, b: &str) -> bool {
    a.len() == b.len() && format!("{a}{a}").contains(b)
}

struct Checks {
    list: Vec<Value>,
    diff: Vec<String>,
}

impl Checks {
    fn push(&mut self, name: String, diff: Vec<String>) {
        self.list.push(json!({ "name": name, "pass": diff.is_empty() }));
        self.diff.extend(diff);
    }

    fn expect(&mut self, name: String, ok: bool, what: impl FnOnce() -> String) {
        let diff = if ok { Vec::new() } else { vec![format!("{name}: {}", what())] };
        self.push(name, diff);
    }
}

fn example_case(
    case: &BaseCase,
    field: Option<FieldSpec>,
    ck: &mut Checks,
    r: &mut RunReport,
    t: &mut Timer,
) -> Result<Vec<usize>, Failure> {
    let b = case.base;
    let c = parse_dow(&[golden::WORD])?;
    let e = c.edge_by_name(b)?;
    let gamma = OrientedFundamentalCircuits::based(&c, &[e])?;
    let s = signed_ias(&c, &gamma)?;
    ck.push(format!("{b}: IAS(C)"), matrix_diff(&format!("{b}/C"), s.matrix(), &golden_matrix(&case.c, s.matrix())?));
    r.matrix(&format!("base {b}: C"), s.matrix());

    let v = c.graph().index_of(golden::KAPPA_VERTEX)?;
    let c2 = c.kappa_transform(v, &gamma)?;
    let word = c2.word_strings().concat();
    ck.expect(format!("{b}: C*d word"), is_rotation(&word, case.c_tilde_word), || {
        format!("expected a rotation of {}, got {word}", case.c_tilde_word)
    });
    let s2 = signed_ias_based(&c2, &[e])?;
    ck.push(
        format!("{b}: IAS(C*d)"),
        matrix_diff(&format!("{b}/C*d"), s2.matrix(), &golden_matrix(&case.c_tilde, s2.matrix())?),
    );
    r.matrix(&format!("base {b}: C*d"), s2.matrix());

    let (m, flipped) = replay_row_operations(&s, &s2, golden::KAPPA_VERTEX)?;
    let mut diff = matrix_diff(&format!("{b}/row operations"), &m, s.matrix());
    if flipped.len() != case.flipped {
        diff.push(format!("{b}/row operations: expected {} negated columns, got {flipped:?}", case.flipped));
    }
    ck.push(format!("{b}: row operations from C*d back to C"), diff);

    let mut got = t.time("three_circuits", || three_circuits(&s, FieldSpec::Rational))?;
    got.sort();
    let mut want: Vec<[String; 3]> = case.triples.iter().map(|t| t.map(str::to_string)).collect();
    want.sort();
    ck.expect(format!("{b}: 3-circuits"), got == want, || format!("expected {want:?}, got {got:?}"));
    let profile = incidence_profile(&got, s.column_labels());

    let sweep = t.time("determinants", || transversal_determinants(&s))?;
    ck.expect(format!("{b}: 81 transversal determinants in {{-1, 0, 1}}"), sweep.values.len() == 81 && sweep.unimodular, || {
        format!("worst determinant {}", sweep.worst)
    });

    let d = Direction::from_gamma(&c, &gamma);
    let mut bad = Vec::new();
    t.time("naturality", || -> Result<(), Failure> {
        for i in 0..81 {
            let p = CircuitPartition::from_kinds(&c, &DeterminantSweep::kinds_of(4, i))?;
            if !naturality_check(&c, &c2, &gamma, s2.gamma(), &p, &d)? {
                bad.push(i);
            }
        }
        Ok(())
    })?;
    ck.expect(format!("{b}: naturality over 81 partitions"), bad.is_empty(), || format!("fails at partitions {bad:?}"));

    if let Some(f) = field {
        let rep = t.time("shelters", || shelters(&s.matrix().reduce_to(f)?, &c.interlacement(), 3, true))?;
        ck.expect(format!("{b}: shelters Z3 over {f}"), rep.verdict, || format!("{rep:?}"));
    }
    Ok(profile)
}

pub fn cmd_paper_example(a: &ExampleArgs, timing: bool) -> CmdResult {
    let mut r = RunReport::new("paper-example");
    r.inputs.push(InputDigest::of("builtin:abcdbacd", golden::WORD.as_bytes()));
    let mut t = Timer::new(timing);
    let mut ck = Checks { list: Vec::new(), diff: Vec::new() };
    let pa = example_case(&golden::AD, a.field, &mut ck, &mut r, &mut t)?;
    let pc = example_case(&golden::CD, a.field, &mut ck, &mut r, &mut t)?;

    let labels = r.matrices[0].col_labels.clone();
    let threes: Vec<&str> = labels.iter().zip(&pa).filter(|(_, &k)| k == 3).map(|(l, _)| l.as_str()).collect();
    ck.expect("ad: elements in exactly three 3-circuits".into(), threes == golden::AD_TRIPLE_ELEMENTS, || {
        format!("got {threes:?}")
    });
    ck.expect("cd: every element in an even number of 3-circuits".into(), pc.iter().all(|k| k % 2 == 0), || {
        format!("profile {pc:?}")
    });
    let (mut sa, mut sc) = (pa.clone(), pc.clone());
    sa.sort();
    sc.sort();
    ck.expect("ad and cd matroids are not isomorphic".into(), sa != sc, || "same incidence profile".into());

    let pass = ck.diff.is_empty();
    r.verdict("checks", &ck.list);
    r.verdict("fixture_diff", &ck.diff);
    r.verdict("all_pass", pass);
    t.finish(&mut r);
    Ok((r, if pass { Outcome::Success } else { Outcome::Negative }))
}

fn describe_mm(z: &SemiMultimatroid, r: &mut RunReport, t: &mut Timer) -> Result<(), Failure> {
    r.verdict("order", z.order());
    r.verdict("ground_size", z.ground_size());
    let circuits = t.time("circuits", || z.circuits())?;
    r.verdict("circuit_count", circuits.len());
    let class = t.time("classify", || z.classify())?;
    r.verdict("classification", class);
    Ok(())
}

fn refutation(z: &SemiMultimatroid, r: &mut RunReport, t: &mut Timer) -> Result<(), Failure> {
    if z.order() > REFUTATION_BOUND {
        r.warnings.push(format!("binary refutation skipped above order {REFUTATION_BOUND}"));
        return Ok(());
    }
    let w = t.time("refutation", || binary_refutation(z))?;
    r.verdict("binary_refutation", w.is_some());
    if let Some(w) = w {
        r.verdict("refutation_witness", w);
    }
    Ok(())
}

fn read_matroid(path: &Path, r: &mut RunReport) -> Result<BinaryMatroidRep, Failure> {
    let (text, digest) = read(path)?;
    r.inputs.push(digest);
    Ok(BinaryMatroidRep::parse(&text)?)
}

fn builtin_digest(z: &SemiMultimatroid, name: &str) -> Result<InputDigest, Failure> {
    let list = serde_json::to_string(&z.to_circuit_list()?).expect("serializable");
    Ok(InputDigest::of(format!("builtin:{name}"), list.as_bytes()))
}

pub fn cmd_multimatroid(cmd: &MmCommand, timing: bool) -> CmdResult {
    let mut t = Timer::new(timing);
    let mut r;
    match cmd {
        MmCommand::Classify { path } => {
            r = RunReport::new("multimatroid classify");
            let (text, digest) = read(path)?;
            r.inputs.push(digest);
            let list: CircuitList =
                serde_json::from_str(&text).map_err(|e| Failure::Other(format!("{}: {e}", path.display())))?;
            let z = SemiMultimatroid::from_circuit_list(&list)?;
            describe_mm(&z, &mut r, &mut t)?;
            refutation(&z, &mut r, &mut t)?;
        }
        MmCommand::H33 => {
            r = RunReport::new("multimatroid h33");
            let z = h33();
            r.inputs.push(builtin_digest(&z, "h33")?);
            describe_mm(&z, &mut r, &mut t)?;
        }
        MmCommand::S1 => {
            r = RunReport::new("multimatroid s1");
            let z = s1();
            r.inputs.push(builtin_digest(&z, "s1")?);
            describe_mm(&z, &mut r, &mut t)?;
            refutation(&z, &mut r, &mut t)?;
            let h = h33();
            let mut hits = 0usize;
            let mut err = None;
            t.time("h33_minus_transversal", || {
                h.for_each_subtransversal(|x| {
                    if err.is_none() && h.is_transversal(x) {
                        match h.delete(x).and_then(|rest| mm_isomorphic(&rest, &z)) {
                            Ok(m) => hits += m.is_some() as usize,
                            Err(e) => err = Some(e),
                        }
                    }
                })
            })?;
            if let Some(e) = err {
                return Err(e.into());
            }
            r.verdict("h33_transversals_leaving_s1", hits);
        }
        MmCommand::Z2 { path } => {
            r = RunReport::new("multimatroid z2");
            let m = read_matroid(path, &mut r)?;
            describe_mm(&z2_of_matroid(&m), &mut r, &mut t)?;
        }
        MmCommand::Z3 { path, naji } => {
            r = RunReport::new("multimatroid z3");
            let m = read_matroid(path, &mut r)?;
            describe_mm(&z3_of_matroid(&m)?, &mut r, &mut t)?;
            if *naji {
                r.verdict("regular", t.time("naji", || matroid_is_planar(&m))?);
            }
        }
        MmCommand::Planar { path, budget, obstruction } => {
            r = RunReport::new("multimatroid planar");
            let m = read_matroid(path, &mut r)?;
            let planar = t.time("naji", || matroid_is_planar(&m))?;
            r.verdict("planar", planar);
            let g = circlemm::multimatroid::fundamental_graph(&m);
            r.verdict("fundamental_graph", g.edges().iter().map(|&(a, b)| [g.label(a), g.label(b)]).collect::<Vec<_>>());
            if *obstruction {
                let obs = t.time("obstruction", || find_obstruction(&g, *budget))?;
                r.verdict("obstructions_found", obs.found.iter().map(|(n, _)| n.as_str()).collect::<Vec<_>>());
                r.verdict("obstruction_search_complete", obs.complete);
            }
        }
    }
    t.finish(&mut r);
    Ok((r, Outcome::Success))
}
