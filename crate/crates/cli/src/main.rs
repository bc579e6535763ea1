use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use ramlift::homlift::{dvr_homs, enumerate_homs, enumerate_isos, has_root, lift_hom, RootDecision};
use ramlift::ramification::{generic_bounds, lift_precision_bound, nu_of_e, ramification_report};
use ramlift::serial::{
    dvr_hom_to_json, hom_from_json_between, hom_to_json, parse_int_poly, ring_from_json, ring_to_json,
};
use ramlift::{Dvr, DvrHom, DvrSpec, Error, FieldEmbedding, FieldSpec, ResidueHom, ValQ};

#[derive(Parser)]
#[command(name = "ramlift", version, about = "Residue rings, Krasner bounds and homomorphism lifting for p-adic rings")]
struct Cli {
    /// Print human-readable tables instead of JSON.
    #[arg(long, global = true)]
    text: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Summarize a ring given by a JSON spec (inline or a file path).
    Ring { spec: String },
    /// List homomorphisms R1/m^n1 -> R2/m^n2.
    Homs {
        src: String,
        tgt: String,
        n1: u32,
        n2: u32,
        #[arg(long)]
        iso: bool,
        #[arg(long)]
        count: bool,
    },
    /// Lift a residue ring homomorphism to the rings.
    Lift {
        src: String,
        tgt: String,
        n1: u32,
        n2: u32,
        /// `{"psi":{"image_of_generator":...},"beta":"π:..."}`; psi is optional.
        hom: String,
        /// Number of π-digits of the image of the uniformizer to print.
        #[arg(long)]
        prec: Option<u32>,
    },
    /// Generic lifting bounds for ramification index e over p.
    Bounds { p: u64, e: u32 },
    /// Decide whether a monic integer polynomial has a root in the ring.
    Hasroot { spec: String, poly: String },
    /// Run a named fixture: ex-2-13-1, ex-2-13-2, wild-2-2, ex-4-12, tame-atlas.
    Demo { id: String },
}

enum Failure {
    Lib(Error),
    Input(String),
    Fixture,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

type Out = Result<(), Failure>;

fn load_json(arg: &str) -> Result<Value, Failure> {
    let text = if arg.trim_start().starts_with('{') {
        arg.to_string()
    } else {
        std::fs::read_to_string(arg).map_err(|e| Failure::Input(format!("cannot read {arg}: {e}")))?
    };
    serde_json::from_str(&text).map_err(|e| Failure::Input(format!("invalid JSON in {arg}: {e}")))
}

fn load_ring(arg: &str) -> Result<Dvr, Failure> {
    Ok(ring_from_json(&load_json(arg)?)?)
}

fn emit(text: bool, v: &Value, table: impl FnOnce() -> String) {
    if text {
        print!("{}", table());
    } else {
        println!("{}", serde_json::to_string_pretty(v).expect("serializable"));
    }
}

fn ring_summary(r: &Dvr) -> Value {
    let rep = ramification_report(r);
    json!({
        "p": r.p(),
        "q": r.q(),
        "e": r.e(),
        "eisenstein": ring_to_json(r)["eisenstein"],
        "tame": rep.tame,
        "M": rep.m,
        "different": rep.different_val,
        "discriminant": rep.discriminant_val,
        "lift_precision_bound": lift_precision_bound(r, r.e()),
    })
}

fn kv_table(v: &Value) -> String {
    let mut s = String::new();
    if let Value::Object(m) = v {
        for (k, x) in m {
            let shown = match x {
                Value::String(t) => t.clone(),
                other => other.to_string(),
            };
            s.push_str(&format!("{k:<22}{shown}\n"));
        }
    }
    s
}

fn cmd_ring(text: bool, spec: &str) -> Out {
    let r = load_ring(spec)?;
    let v = ring_summary(&r);
    emit(text, &v, || kv_table(&v));
    Ok(())
}

fn cmd_homs(text: bool, src: &str, tgt: &str, n1: u32, n2: u32, iso: bool, count: bool) -> Out {
    let (r1, r2) = (load_ring(src)?, load_ring(tgt)?);
    let (a, b) = (r1.residue_ring(n1)?, r2.residue_ring(n2)?);
    let homs = if iso { enumerate_isos(&a, &b)? } else { enumerate_homs(&a, &b)? };
    if count {
        let v = json!(homs.len());
        emit(text, &v, || format!("{}\n", homs.len()));
        return Ok(());
    }
    let v = Value::Array(homs.iter().map(hom_to_json).collect());
    emit(text, &v, || {
        let mut s = format!("{:<12}{:<30}iso\n", "psi(y)", "beta");
        for h in &homs {
            s.push_str(&format!("{:<12}{:<30}{}\n", h.psi().image_of_generator().to_string(), h.beta().to_string(), h.is_iso()));
        }
        s
    });
    Ok(())
}

fn extend_lift(g: DvrHom, prec: u32) -> Result<DvrHom, Failure> {
    if g.rho().precision() >= prec {
        return Ok(g);
    }
    dvr_homs(g.source(), g.target(), prec)?
        .into_iter()
        .find(|h| h.psi() == g.psi() && h.rho() == g.rho())
        .ok_or(Failure::Lib(Error::NoRoot))
}

fn cmd_lift(text: bool, src: &str, tgt: &str, n1: u32, n2: u32, hom: &str, prec: Option<u32>) -> Out {
    let (r1, r2) = (load_ring(src)?, load_ring(tgt)?);
    let (a, b) = (r1.residue_ring(n1)?, r2.residue_ring(n2)?);
    let phi = hom_from_json_between(&load_json(hom)?, &a, &b)?;
    let g = lift_hom(&phi)?;
    let matches = g.project(n1, n2)? == phi;
    if !matches {
        eprintln!("warning: projection differs from input hom");
    }
    let g = match prec {
        Some(p) => extend_lift(g, p)?,
        None => g,
    };
    let mut v = dvr_hom_to_json(&g);
    if let Some(p) = prec {
        let digits = g.rho().pi_digits(p)?;
        v["rho"] = json!(ramlift::dvr::render_pi_digits(&digits));
    }
    v["is_iso"] = json!(g.is_iso());
    v["projection_matches_input"] = json!(matches);
    emit(text, &v, || {
        format!(
            "psi(y)                {}\nrho                   {}\ncertificate           t = {}, deriv_val = {}\nis_iso                {}\nprojection matches    {}\n",
            g.psi().image_of_generator(),
            v["rho"].as_str().unwrap(),
            g.certificate().t,
            g.certificate().deriv_val,
            g.is_iso(),
            matches
        )
    });
    Ok(())
}

fn bounds_json(p: u64, e: u32) -> Value {
    let b = generic_bounds(p, e);
    json!({
        "p": p,
        "e": e,
        "nu_e": nu_of_e(p, e),
        "upper": b.upper,
        "lower": b.lower,
        "tame_exact": b.tame_exact,
        "basarab_upper": b.basarab_upper,
    })
}

fn cmd_bounds(text: bool, p: u64, e: u32) -> Out {
    if e == 0 {
        return Err(Failure::Input("e must be at least 1".into()));
    }
    FieldSpec::prime_field(p)?;
    let v = bounds_json(p, e);
    emit(text, &v, || kv_table(&v));
    Ok(())
}

fn root_json(d: &RootDecision) -> Value {
    match d {
        RootDecision::Yes(c) => json!({
            "answer": "yes",
            "root": c.root.to_string(),
            "certificate": {"t": c.certificate.t, "deriv_val": c.certificate.deriv_val},
        }),
        RootDecision::No => json!({"answer": "no"}),
        RootDecision::Undecided(p) => json!({"answer": "undecided", "precision": p}),
    }
}

fn cmd_hasroot(text: bool, spec: &str, poly: &str) -> Out {
    let r = load_ring(spec)?;
    let f = parse_int_poly(poly)?;
    let d = has_root(&r, &f)?;
    let v = root_json(&d);
    emit(text, &v, || kv_table(&v));
    Ok(())
}

// ---------------------------------------------------------------------------
// fixtures

struct Report {
    checks: Vec<Value>,
}

impl Report {
    fn new() -> Report {
        Report { checks: Vec::new() }
    }

    fn check(&mut self, name: &str, expected: Value, actual: Value) {
        let pass = expected == actual;
        self.checks.push(json!({"name": name, "expected": expected, "actual": actual, "pass": pass}));
    }

    fn passed(&self) -> bool {
        self.checks.iter().all(|c| c["pass"] == json!(true))
    }
}

fn int_ring(p: u64, f: &[i64]) -> Result<Dvr, Error> {
    DvrSpec::from_ints(&FieldSpec::prime_field(p)?, f)
}

fn count_isos(r1: &Dvr, r2: &Dvr, n: u32) -> Result<usize, Error> {
    Ok(enumerate_isos(&r1.residue_ring(n)?, &r2.residue_ring(n)?)?.len())
}

fn count_homs(r1: &Dvr, r2: &Dvr, n: u32) -> Result<usize, Error> {
    Ok(enumerate_homs(&r1.residue_ring(n)?, &r2.residue_ring(n)?)?.len())
}

fn root_answer(r: &Dvr, f: &[i64]) -> Result<Value, Error> {
    Ok(root_json(&has_root(r, f)?)["answer"].clone())
}

fn demo_ex_2_13_1(rep: &mut Report) -> Result<(), Error> {
    let r1 = int_ring(3, &[-3, 0, 1])?;
    let r2 = int_ring(3, &[3, 0, 1])?;
    rep.check("M(Z3[sqrt3])", json!("1/2"), json!(ramlift::ramification::krasner_bound(&r1).to_string()));
    rep.check("lift precision bound", json!(3), json!(lift_precision_bound(&r1, 2)));
    rep.check("|Iso(R1_2, R2_2)|", json!(2), json!(count_isos(&r1, &r2, 2)?));
    let a = r1.residue_ring(2)?;
    let b = r2.residue_ring(2)?;
    let phi = ResidueHom::new(&a, &b, FieldEmbedding::identity(r1.residue_field()), b.uniformizer())?;
    rep.check("a+b*sqrt3 -> a+b*sqrt(-3) is an isomorphism", json!(true), json!(phi.is_iso()));
    rep.check(
        "lifting at n2 = 2",
        json!("PreconditionBound"),
        json!(match lift_hom(&phi) {
            Err(Error::PreconditionBound { .. }) => "PreconditionBound".to_string(),
            Err(e) => e.to_string(),
            Ok(_) => "lifted".to_string(),
        }),
    );
    rep.check("|Hom(R1_3, R2_3)|", json!(0), json!(count_homs(&r1, &r2, 3)?));
    rep.check("x^2-3 has a root in Z3[sqrt(-3)]", json!("no"), root_answer(&r2, &[-3, 0, 1])?);
    Ok(())
}

fn demo_ex_2_13_2(rep: &mut Report) -> Result<(), Error> {
    let r = int_ring(3, &[-3, 0, 1])?;
    let r4 = r.residue_ring(4)?;
    let beta = r4.from_dvr(&(&r.from_int(4, 4)? * &r.uniformizer(4)?))?;
    let phi = ResidueHom::new(&r4, &r4, FieldEmbedding::identity(r.residue_field()), beta)?;
    rep.check("x -> 4x is an automorphism of R_4", json!(true), json!(phi.is_iso() && !phi.is_identity()));
    let g = lift_hom(&phi)?;
    let id = DvrHom::identity(&r, g.rho().precision())?;
    rep.check("lift is the identity", json!(true), json!(g == id));
    rep.check("projection of the lift equals the input", json!(false), json!(g.project(4, 4)? == phi));
    Ok(())
}

fn demo_wild_2_2(rep: &mut Report) -> Result<(), Error> {
    let r1 = int_ring(2, &[-2, 0, 1])?;
    let r2 = int_ring(2, &[-10, 0, 1])?;
    rep.check("M(Z2[sqrt2])", json!("3/2"), json!(ramlift::ramification::krasner_bound(&r1).to_string()));
    rep.check("generic bound for (2,2)", json!(7), json!(generic_bounds(2, 2).upper));
    rep.check("lift precision bound", json!(7), json!(lift_precision_bound(&r1, 2)));
    rep.check("Iso(R1_6, R2_6) nonempty", json!(true), json!(count_isos(&r1, &r2, 6)? > 0));
    rep.check("|Hom(R1_7, R2_7)|", json!(0), json!(count_homs(&r1, &r2, 7)?));
    rep.check("x^2-2 has a root in Z2[sqrt10]", json!("no"), root_answer(&r2, &[-2, 0, 1])?);
    Ok(())
}

fn demo_ex_4_12(rep: &mut Report) -> Result<(), Error> {
    let r = int_ring(3, &[-3, 0, 0, 1])?;
    let report = ramification_report(&r);
    rep.check("M(Z3[cbrt3])", json!(ValQ::new(5, 6).to_string()), json!(report.m.to_string()));
    rep.check("different", json!(5), json!(report.different_val));
    rep.check("per-ring bound", json!(8), json!(lift_precision_bound(&r, 3)));
    rep.check("basarab bound e(1+nu(e))+1", json!(13), json!(generic_bounds(3, 3).basarab_upper));
    Ok(())
}

fn demo_tame_atlas(rep: &mut Report) -> Result<(), Error> {
    for e in 2..=4u32 {
        for p in [2u64, 3, 5, 7] {
            if (e as u64).is_multiple_of(p) {
                continue;
            }
            let b = generic_bounds(p, e);
            rep.check(
                &format!("lifting number (p={p}, e={e})"),
                json!({"upper": e + 1, "lower": e + 1, "tame_exact": e + 1}),
                json!({"upper": b.upper, "lower": b.lower, "tame_exact": b.tame_exact}),
            );
        }
    }
    Ok(())
}

type Fixture = (&'static str, &'static str, fn(&mut Report) -> Result<(), Error>);

const FIXTURES: [Fixture; 5] = [
    ("ex-2-13-1", "Z3[sqrt3] and Z3[sqrt(-3)]: isomorphic at length 2, no maps at length 3", demo_ex_2_13_1),
    ("ex-2-13-2", "an automorphism of Z3[sqrt3]/m^4 whose lift does not induce it", demo_ex_2_13_2),
    ("wild-2-2", "Z2[sqrt2] and Z2[sqrt10]: isomorphic at length 6, no maps at length 7", demo_wild_2_2),
    ("ex-4-12", "Krasner bound and lifting bounds of Z3[cbrt3]", demo_ex_4_12),
    ("tame-atlas", "tame lifting numbers for e in 2..4, p not dividing e", demo_tame_atlas),
];

fn cmd_demo(text: bool, id: &str) -> Out {
    let Some((_, description, run)) = FIXTURES.iter().find(|f| f.0 == id) else {
        let known: Vec<&str> = FIXTURES.iter().map(|f| f.0).collect();
        return Err(Failure::Input(format!("unknown fixture {id:?}; known: {}", known.join(", "))));
    };
    let mut rep = Report::new();
    run(&mut rep)?;
    let pass = rep.passed();
    let v = json!({
        "id": id,
        "description": description,
        "checks": rep.checks,
        "result": if pass { "PASS" } else { "FAIL" },
    });
    emit(text, &v, || {
        let mut s = format!("{id}: {description}\n");
        for c in v["checks"].as_array().unwrap() {
            let mark = if c["pass"] == json!(true) { "ok  " } else { "FAIL" };
            s.push_str(&format!("  {mark} {:<46} expected {} got {}\n", c["name"].as_str().unwrap(), c["expected"], c["actual"]));
        }
        s.push_str(if pass { "PASS\n" } else { "FAIL\n" });
        s
    });
    if pass {
        Ok(())
    } else {
        Err(Failure::Fixture)
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::TooLarge { .. } => 3,
        Error::PreconditionBound { .. } => 4,
        Error::NoRoot | Error::MultipleRoots(_) | Error::PrecisionTooLow(_) | Error::Degenerate(_) => 1,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let t = cli.text;
    let res = match &cli.cmd {
        Cmd::Ring { spec } => cmd_ring(t, spec),
        Cmd::Homs { src, tgt, n1, n2, iso, count } => cmd_homs(t, src, tgt, *n1, *n2, *iso, *count),
        Cmd::Lift { src, tgt, n1, n2, hom, prec } => cmd_lift(t, src, tgt, *n1, *n2, hom, *prec),
        Cmd::Bounds { p, e } => cmd_bounds(t, *p, *e),
        Cmd::Hasroot { spec, poly } => cmd_hasroot(t, spec, poly),
        Cmd::Demo { id } => cmd_demo(t, id),
    };
    match res {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Fixture) => ExitCode::from(1),
    }
}
