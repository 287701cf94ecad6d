//! End-to-end acceptance checks. Each criterion prints one PASS/FAIL line;
//! every comparison is exact (tolerance 0) unless a line says otherwise.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use fourquad::catalog::{g4_family_forms, g4_pencil, g5_pencil, NAMES};
use fourquad::chartab::ClassFunction;
use fourquad::exact::fp::smallest_nonresidue;
use fourquad::exact::matrix::span_rank;
use fourquad::exact::{Cyclotomic, Embedding, FieldElem, Fp2Elem, PrimeFieldElem};
use fourquad::geometry::{
    census_orbits, divisor_incidence, embed_forms, pencil_family_invariance, pencil_invariance, projective_empty,
    projective_points, random_parameters, singular_census, CensusMode, DivisorPencil, Mono, Poly, PolyRing,
    SingularCensus,
};
use fourquad::groups::DEFAULT_CAP;
use fourquad::io::load_group;
use fourquad::lefschetz::{alt2_character, sym2_character};
use fourquad::pipeline::{run_full, Analysis, RunConfig};
use fourquad::quadrics::{defining_character, displayed_parameters, sym2_trace_vector, QuadraticForm};
use fourquad::report::to_json;

const P: u64 = 65537;

/// Criteria whose literal statement does not hold; see the decisions notes.
const EXPECTED_FAILURES: &[u32] = &[6, 7];

struct Outcome {
    id: u32,
    title: &'static str,
    checks: Vec<(String, bool)>,
}

impl Outcome {
    fn new(id: u32, title: &'static str) -> Self {
        Outcome { id, title, checks: Vec::new() }
    }

    fn check(&mut self, what: impl Into<String>, ok: bool) {
        self.checks.push((what.into(), ok));
    }

    fn pass(&self) -> bool {
        self.checks.iter().all(|(_, ok)| *ok)
    }

    fn line(&self) -> String {
        let failed: Vec<&str> = self.checks.iter().filter(|(_, ok)| !ok).map(|(w, _)| w.as_str()).collect();
        let detail = if failed.is_empty() {
            format!("{} checks", self.checks.len())
        } else {
            format!("failed: {}", failed.join("; "))
        };
        format!(
            "criterion {} {} [{}] tolerance exact: {}",
            self.id,
            if self.pass() { "PASS" } else { "FAIL" },
            self.title,
            detail
        )
    }
}

fn analysis(name: &str) -> Analysis {
    Analysis::new(&load_group(name).unwrap(), DEFAULT_CAP).unwrap()
}

fn ints(v: &[i64]) -> Vec<Cyclotomic> {
    v.iter().map(|&x| Cyclotomic::from_int(1, x)).collect()
}

/// Values of `f` at the given classes.
fn at(f: &ClassFunction, classes: &[usize]) -> Vec<Cyclotomic> {
    classes.iter().map(|&c| f.values[c].clone()).collect()
}

fn criterion_1() -> Outcome {
    let mut o = Outcome::new(1, "H8 regular representation passes");
    let a = analysis("H8_regular");
    let fg = a.group.group();
    let [i, j] = a.group.generator_indices()[..] else { panic!("two generators") };
    let cls = &a.classes.class_of;
    // (1), (i), (j), (-1), (k)
    let order = [cls[fg.identity()], cls[i], cls[j], cls[fg.mul(i, i)], cls[fg.mul(i, j)]];
    let v = a.lefschetz().unwrap();
    o.check("defining trace [8,0,0,0,0]", at(&defining_character(&a.group, &a.classes), &order) == ints(&[8, 0, 0, 0, 0]));
    o.check("Sym2 trace [36,0,0,4,0]", at(&sym2_trace_vector(&a.group, &a.classes), &order) == ints(&[36, 0, 0, 4, 0]));
    o.check("quadric character [4,0,0,4,0]", at(&v.chosen().v, &order) == ints(&[4, 0, 0, 4, 0]));
    let mult = v.v_multiplicities().unwrap_or(&[]);
    let used: Vec<usize> = (0..mult.len()).filter(|&k| mult[k] > 0).collect();
    o.check(
        "four distinct linear characters once each",
        used.len() == 4 && used.iter().all(|&k| mult[k] == 1 && a.table.degrees[k] == 1),
    );
    o.check("verdict PASS", v.pass);
    o
}

fn criterion_2() -> Outcome {
    let mut o = Outcome::new(2, "D8 obstruction");
    let a = analysis("D8_regular");
    let fg = a.group.group();
    let [r, s] = a.group.generator_indices()[..] else { panic!("two generators") };
    let cls = &a.classes.class_of;
    // (1), (b), (ab), (a^2), (a)
    let order = [cls[fg.identity()], cls[s], cls[fg.mul(r, s)], cls[fg.mul(r, r)], cls[r]];
    let v = a.lefschetz().unwrap();
    o.check("Sym2 trace [36,4,4,4,0]", at(&sym2_trace_vector(&a.group, &a.classes), &order) == ints(&[36, 4, 4, 4, 0]));
    o.check("verdict FAIL", !v.pass);
    let c = v.chosen();
    o.check("witness [4,4,4,4,0]", at(&c.v, &order) == ints(&[4, 4, 4, 4, 0]));
    o.check("witness is not a character", !c.v_decomposition.is_character());
    let report = a.lefschetz_report(&v);
    o.check("report names the witness", report.witness.as_ref().is_some_and(|w| w.function == "v"));
    o
}

fn criterion_3() -> Outcome {
    let mut o = Outcome::new(3, "cover structure of G4 and G1");
    let a = analysis("G4");
    let r = a.closure_report().unwrap();
    o.check("G4 order 256", r.order == 256);
    o.check("G4 46 classes", r.class_count == 46);
    let count = |d: u64| a.table.degrees.iter().filter(|&&x| x == d).count();
    o.check("G4 degrees 1x16 2x28 8x2", (count(1), count(2), count(8), a.table.degrees.len()) == (16, 28, 2, 46));
    o.check("G4 scalar order 4", r.scalar_order == 4);
    o.check("G4 projective order 64", r.projective_order == 64);
    let b = analysis("G1").closure_report().unwrap();
    o.check("G1 order 512", b.order == 512);
    o.check("G1 scalar order 8", b.scalar_order == 8);
    o.check("G1 projective order 64", b.projective_order == 64);
    o.check("G1 central quotient abelian", b.projective_abelian);
    o.check(format!("G1 central quotient exponent 8 (found {})", b.projective_exponent), b.projective_exponent == 8);
    o
}

fn criterion_4() -> Outcome {
    let mut o = Outcome::new(4, "G4 quadric family");
    let a = analysis("G4");
    let fam = a.family(&a.lefschetz().unwrap()).unwrap();
    let mults: Vec<usize> = fam.constituents.iter().map(|c| c.multiplicity).collect();
    o.check("constituent multiplicities (2,2)", mults == [2, 2]);
    o.check("shape P^1 x P^1", fam.shape_string() == "P^1 x P^1");
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut agree = 0;
    for _ in 0..20 {
        let t: Vec<Cyclotomic> = (0..4).map(|_| Cyclotomic::from_int(8, rng.gen_range(1..1000))).collect();
        let forms = g4_family_forms(&t[0], &t[1], &t[2], &t[3]);
        let shown: Vec<Vec<Cyclotomic>> = forms.iter().map(QuadraticForm::coeffs).collect();
        let Some(params) = displayed_parameters(&fam, &forms) else { continue };
        let member = fam.specialize(&params).unwrap();
        let both: Vec<Vec<Cyclotomic>> = member.coeffs.iter().chain(&shown).cloned().collect();
        if span_rank(&member.coeffs, 8) == 4 && span_rank(&shown, 8) == 4 && span_rank(&both, 8) == 4 {
            agree += 1;
        }
    }
    o.check(format!("span equality at 20 random pairs ({agree} agree)"), agree == 20);
    o
}

fn criterion_5() -> Outcome {
    let mut o = Outcome::new(5, "freeness certificates");
    for name in ["G4", "G5", "G5prime", "H8_regular"] {
        let a = analysis(name);
        let fam = a.family(&a.lefschetz().unwrap()).unwrap();
        for seed in 1..=3 {
            let cfg = RunConfig { seed, ..RunConfig::default() };
            let m = a.member(&fam, &cfg).unwrap();
            let r = a.freeness(&m, P).unwrap();
            o.check(format!("{name} seed {seed} free"), r.verdict.free);
            o.check(format!("{name} seed {seed} certificate re-verifies"), r.verify().is_ok() && !r.classes.is_empty());
        }
    }
    o
}

fn g4_census(seed: u64) -> (SingularCensus, Embedding) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let t: Vec<Cyclotomic> =
        random_parameters(4, P, &mut rng).into_iter().map(|x| Cyclotomic::from_int(8, x as i64)).collect();
    let coeffs: Vec<Vec<Cyclotomic>> =
        g4_family_forms(&t[0], &t[1], &t[2], &t[3]).iter().map(QuadraticForm::coeffs).collect();
    let emb = Embedding::standard(P, 8).unwrap();
    let forms = embed_forms(&coeffs, 8, &emb).unwrap();
    (singular_census(&forms, &PolyRing::new(8, P), CensusMode::Diagonal).unwrap(), emb)
}

fn criterion_6() -> Outcome {
    let mut o = Outcome::new(6, "node census of the G4 family");
    let want: Vec<Vec<usize>> = [
        [1, 3, 5, 8],
        [1, 3, 6, 7],
        [1, 4, 5, 7],
        [1, 4, 6, 8],
        [2, 3, 5, 7],
        [2, 3, 6, 8],
        [2, 4, 5, 8],
        [2, 4, 6, 7],
    ]
    .iter()
    .map(|p| p.to_vec())
    .collect();
    let g4 = load_group("G4").unwrap().generators;
    let g5 = load_group("G5").unwrap().generators;
    for seed in 1..=3 {
        let (c, emb) = g4_census(seed);
        o.check(format!("seed {seed}: 64 geometric points"), c.geometric_count == 64 && c.points.len() == 64);
        let pats = c.patterns();
        o.check(
            format!("seed {seed}: the eight patterns, 8 points each"),
            pats.iter().map(|(p, _)| p.clone()).collect::<Vec<_>>() == want && pats.iter().all(|&(_, k)| k == 8),
        );
        o.check(format!("seed {seed}: every point is a node"), c.all_odp());
        o.check(format!("seed {seed}: closed under G4"), census_orbits(&c, &g4, &emb).is_ok());
        o.check(format!("seed {seed}: closed under G5"), census_orbits(&c, &g5, &emb).is_ok());
        let on_1468: Vec<_> = c.points.iter().filter(|pt| pt.zero_pattern == [1, 4, 6, 8]).collect();
        let y = |pt: &fourquad::geometry::SingularPoint, i: usize| -> Fp2Elem { pt.coords[i - 1].pow(4) };
        let literal = on_1468.iter().all(|pt| y(pt, 3) - y(pt, 7) == y(pt, 2) + y(pt, 5));
        let corrected = on_1468.iter().all(|pt| y(pt, 3) - y(pt, 7) == y(pt, 2) - y(pt, 5));
        o.check(format!("seed {seed}: y3^4 - y7^4 = y2^4 + y5^4 on (1468)"), literal);
        o.check(format!("seed {seed}: y3^4 - y7^4 = y2^4 - y5^4 on (1468)"), corrected);
    }
    o
}

fn criterion_7() -> Outcome {
    let mut o = Outcome::new(7, "divisor pencils");
    let (c, _) = g4_census(1);
    let p4 = DivisorPencil::from_builder(g4_pencil);
    let p5 = DivisorPencil::from_builder(g5_pencil);
    let g4 = load_group("G4").unwrap().generators;
    let g5 = load_group("G5").unwrap().generators;
    o.check("G4 pencil meets every node", divisor_incidence(&p4, &c).unwrap().holds);
    o.check("pencil_invariance(G4, G4 pencil)", pencil_invariance(&g4, &p4));
    o.check("pencil_invariance(G5, G5 pencil)", pencil_invariance(&g5, &p5));
    o.check("G4 preserves the span of the G4 pencil family", pencil_family_invariance(&g4, &p4));
    o.check("G5 preserves the span of the G5 pencil family", pencil_family_invariance(&g5, &p5));
    o
}

fn criterion_8() -> Outcome {
    let mut o = Outcome::new(8, "order-8 rows");
    for name in ["Z2", "Z4", "Z2xZ2", "Z8", "Z2xZ4", "Z2cubed", "H8_regular"] {
        o.check(format!("{name} PASS"), analysis(name).lefschetz().unwrap().pass);
    }
    o.check("D8_regular FAIL", !analysis("D8_regular").lefschetz().unwrap().pass);
    o
}

fn random_form(n: usize, deg: u32, rng: &mut ChaCha8Rng, p: u32) -> Poly {
    fn rec(i: usize, left: u32, exps: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i + 1 == exps.len() {
            exps[i] = left;
            out.push(exps.clone());
            return;
        }
        for e in 0..=left {
            exps[i] = e;
            rec(i + 1, left - e, exps, out);
        }
    }
    let mut all = Vec::new();
    rec(0, deg, &mut vec![0u32; n], &mut all);
    let mut terms = Vec::new();
    for e in all {
        if rng.gen_bool(0.6) {
            terms.push((Mono::from_exps(&e), rng.gen_range(1..p)));
        }
    }
    Poly::from_terms(terms, p)
}

/// Random systems whose geometric points all lie over F_{p²}: binary forms
/// of degree at most 2, or a line with conics in the plane. Half of them
/// get a planted F_p point.
fn oracle_system(rng: &mut ChaCha8Rng, p: u32) -> (usize, Vec<Poly>) {
    let n = rng.gen_range(2..=3);
    let mut forms = Vec::new();
    if n == 3 {
        let mut l = random_form(3, 1, rng, p);
        while l.is_zero() {
            l = random_form(3, 1, rng, p);
        }
        forms.push(l);
    }
    for _ in 0..rng.gen_range(1..=2) {
        forms.push(random_form(n, rng.gen_range(1..=2), rng, p));
    }
    if rng.gen_bool(0.5) {
        let pt: Vec<PrimeFieldElem> =
            (0..n).map(|_| PrimeFieldElem::new(rng.gen_range(0..p as u64), p as u64)).collect();
        if let Some(k) = pt.iter().position(|x| !x.is_zero()) {
            for f in forms.iter_mut() {
                let val = f.eval(&pt);
                let d = f.degree();
                let mut e = vec![0u32; n];
                e[k] = d;
                let xk = Poly::monomial(Mono::from_exps(&e), 1);
                let c = (val * pt[k].pow(d as u128).inv().unwrap()).value as u32;
                *f = f.sub(&xk.scale(c, p), p);
            }
        }
    }
    forms.retain(|f| !f.is_zero());
    (n, forms)
}

fn criterion_9() -> Outcome {
    let mut o = Outcome::new(9, "property suites");
    for name in NAMES {
        let a = analysis(name);
        let t = &a.table;
        o.check(format!("{name} row orthogonality and sum of squared degrees"), t.verify_orthogonality().is_ok());
        o.check(format!("{name} column orthogonality"), t.verify_column_orthogonality());
        let total: u64 = t.degrees.iter().map(|d| d * d).sum();
        o.check(format!("{name} sum of squared degrees = |G|"), total == a.group.order() as u64);
        let mut chars: Vec<ClassFunction> = t.irreducibles.clone();
        chars.push(defining_character(&a.group, &a.classes));
        let ok = chars.iter().all(|chi| {
            sym2_character(chi, &a.classes).add(&alt2_character(chi, &a.classes)) == chi.mul(chi)
        });
        o.check(format!("{name} sym2 + alt2 = chi^2"), ok);
    }
    let p = 17u32;
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let sample = Fp2Elem::new(0, 0, 17, smallest_nonresidue(17));
    let mut agree = 0;
    for _ in 0..200 {
        let (n, forms) = oracle_system(&mut rng, p);
        let gb = projective_empty(&forms, &PolyRing::new(n, p as u64)).is_empty();
        let brute = projective_points(&forms, n, sample, Some(1)).is_empty();
        agree += usize::from(gb == brute);
    }
    o.check(format!("emptiness agrees with enumeration on {agree}/200 systems"), agree == 200);
    for name in ["G4", "D8_regular"] {
        let def = load_group(name).unwrap();
        let a = to_json(&run_full(&def, &RunConfig::default()).unwrap());
        let b = to_json(&run_full(&def, &RunConfig::default()).unwrap());
        o.check(format!("{name} full report byte-identical across runs"), a == b);
    }
    o
}

fn main() {
    let outcomes = [
        criterion_1(),
        criterion_2(),
        criterion_3(),
        criterion_4(),
        criterion_5(),
        criterion_6(),
        criterion_7(),
        criterion_8(),
        criterion_9(),
    ];
    for o in &outcomes {
        println!("{}", o.line());
    }
    let failed: Vec<u32> = outcomes.iter().filter(|o| !o.pass()).map(|o| o.id).collect();
    if failed != EXPECTED_FAILURES {
        eprintln!("failing criteria {failed:?}, expected {EXPECTED_FAILURES:?}");
        std::process::exit(1);
    }
    println!("failing criteria match the expected set {EXPECTED_FAILURES:?}");
}
