//! Command-line front end: parses ring expressions and element literals,
//! dispatches to the integer-layer or finite-ring decision procedures, and
//! emits one stable JSON document per invocation.
//!
//! JSON shape: `{schemaVersion, command, inputs, verdict|items|report,
//! certificate?, elapsedMs}`, keys in sorted order.  Exit codes: 0 for a
//! completed classification/listing or a passing verification, 1 for a
//! verification with failures, 2 for usage, parse, or unsupported-input
//! errors.

use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::expr::{parse_element_list, parse_ring, print_coords, print_ring};
use crate::extension::{components, extension_parts};
use crate::ideal::{
    enumerate_ideals, ideal_generated, is_maximal, is_prime, is_s_maximal_residual,
    is_s_prime_residual, max_s, mult_set_generated, spec_s, Ideal, SPrimalityCertificate,
};
use crate::module::{enumerate_submodules, BaseRing, ModuleDescriptor, ModuleElement, Submodule};
use crate::ring::{RingDescriptor, RingElement};
use crate::verify::{reproduce_examples, run_suite, search_counterexamples, CatalogSpec};
use crate::zlayer::{
    z_is_s_maximal, z_is_s_prime, zte_ideal, zte_is_homogeneous, zte_is_s_maximal,
    zte_is_s_prime, ZCertificate, ZIdeal, ZMultSet,
};

#[derive(Parser, Debug)]
#[command(
    name = "sprime",
    version,
    about = "S-prime and S-maximal ideals in finite rings, Z, and trivial extensions Z ⋉ M"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Decide one property of the ideal generated by the given elements.
    Classify {
        /// Ring expression: `Z`, `Z/12`, `Z/2 x Z/3`, or `TE(Z, Z/4)`.
        ring: String,
        /// Ideal generators as `;`-separated element literals; empty means the zero ideal.
        #[arg(long, default_value = "", allow_hyphen_values = true)]
        ideal: String,
        /// Multiplicative-set generators; the empty string means S = {1}.
        #[arg(long, default_value = "", allow_hyphen_values = true)]
        mult_set: String,
        /// Property to decide.
        #[arg(long, value_enum)]
        check: Check,
    },
    /// Enumerate ideals, (S-)spectra, or submodules of a finite ring.
    List {
        /// Ring expression; must denote a finite ring.
        ring: String,
        /// Multiplicative-set generators, used by `spec-s` and `max-s`.
        #[arg(long, default_value = "", allow_hyphen_values = true)]
        mult_set: String,
        /// What to enumerate.
        #[arg(long, value_enum)]
        what: What,
    },
    /// Run a verification suite, reproduce the worked examples, or search
    /// for a named phenomenon.  Exits 0 only when the report has no failures.
    #[command(group(clap::ArgGroup::new("goal").required(true)))]
    Verify {
        /// Suite name, e.g. `th1` or `oracle-equivalence`.
        #[arg(long, group = "goal")]
        suite: Option<String>,
        /// Reproduce the four worked examples exactly.
        #[arg(long, group = "goal")]
        examples: bool,
        /// Search target, e.g. `nonhomogeneous-s-prime`.
        #[arg(long, group = "goal")]
        search: Option<String>,
        /// Catalog spec as a JSON file; omitted fields take their defaults.
        #[arg(long)]
        catalog: Option<PathBuf>,
        /// Also write the JSON document to this path.
        #[arg(long)]
        json: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Check {
    Prime,
    Maximal,
    SPrime,
    SMaximal,
    Homogeneous,
}

impl Check {
    fn label(self) -> &'static str {
        match self {
            Check::Prime => "prime",
            Check::Maximal => "maximal",
            Check::SPrime => "s-prime",
            Check::SMaximal => "s-maximal",
            Check::Homogeneous => "homogeneous",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum What {
    Ideals,
    Spec,
    Max,
    SpecS,
    MaxS,
    Submodules,
}

impl What {
    fn label(self) -> &'static str {
        match self {
            What::Ideals => "ideals",
            What::Spec => "spec",
            What::Max => "max",
            What::SpecS => "spec-s",
            What::MaxS => "max-s",
            What::Submodules => "submodules",
        }
    }
}

/// Result of one command: the JSON document, the process exit code, and an
/// optional extra file to write the document to.
#[derive(Debug)]
pub struct CliOutcome {
    pub document: Value,
    pub exit_code: u8,
    pub write_to: Option<PathBuf>,
}

pub fn run(command: Command) -> Result<CliOutcome> {
    let started = Instant::now();
    match command {
        Command::Classify { ring, ideal, mult_set, check } => {
            classify(&ring, &ideal, &mult_set, check, started)
        }
        Command::List { ring, mult_set, what } => list(&ring, &mult_set, what, started),
        Command::Verify { suite, examples, search, catalog, json } => {
            verify(suite, examples, search, catalog, json, started)
        }
    }
}

// ====== document assembly ======

fn document(
    command: &str,
    inputs: Value,
    body_key: &str,
    body: Value,
    certificate: Option<Value>,
    started: Instant,
) -> Value {
    let mut doc = Map::new();
    doc.insert("schemaVersion".into(), json!("1"));
    doc.insert("command".into(), json!(command));
    doc.insert("inputs".into(), inputs);
    doc.insert(body_key.into(), body);
    if let Some(c) = certificate {
        doc.insert("certificate".into(), c);
    }
    doc.insert("elapsedMs".into(), json!(started.elapsed().as_millis() as u64));
    Value::Object(doc)
}

fn z_certificate_json(c: &ZCertificate) -> Value {
    json!({
        "witness": c.witness.as_ref().map(|w| w.to_string()),
        "residual": c.residual.as_ref().map(|r| r.to_string()),
        "torsionWitness": c.torsion_witness.as_ref().map(|w| w.to_string()),
        "reason": c.reason.tag(),
    })
}

fn finite_certificate_json(c: &SPrimalityCertificate) -> Value {
    json!({
        "witness": c.witness.as_ref().map(|w| print_coords(w.coords())),
        "residual": c.residual.as_ref().map(ideal_generator_list),
        "torsionWitness": c.torsion_witness.as_ref().map(|w| print_coords(w.coords())),
        "reason": c.reason.tag(),
    })
}

/// Generators in the same `;`-separated literal syntax the CLI accepts.
fn ideal_generator_list(i: &Ideal) -> String {
    i.generators().iter().map(|g| print_coords(g.coords())).collect::<Vec<_>>().join("; ")
}

// ====== classify ======

fn classify(
    ring_text: &str,
    ideal_text: &str,
    mult_text: &str,
    check: Check,
    started: Instant,
) -> Result<CliOutcome> {
    let ring = parse_ring(ring_text)?;
    let ideal_coords = parse_element_list(ideal_text)?;
    let mult_coords = parse_element_list(mult_text)?;
    let (verdict, ideal_echo, mult_echo, certificate) = match &ring {
        RingDescriptor::Integers => classify_z(&ideal_coords, &mult_coords, check)?,
        RingDescriptor::TrivialExtension(m) if m.base() == BaseRing::Integers => {
            classify_zte(m, &ideal_coords, &mult_coords, check)?
        }
        _ => classify_finite(&ring, &ideal_coords, &mult_coords, check)?,
    };
    let inputs = json!({
        "ring": print_ring(&ring),
        "ideal": ideal_echo,
        "multSet": mult_echo,
        "check": check.label(),
    });
    let doc = document("classify", inputs, "verdict", json!(verdict), certificate, started);
    Ok(CliOutcome { document: doc, exit_code: 0, write_to: None })
}

type Classified = (bool, Value, Value, Option<Value>);

fn single_coords(coords: &[Vec<i64>], what: &str) -> Result<Vec<i64>> {
    coords
        .iter()
        .map(|c| {
            if c.len() == 1 {
                Ok(c[0])
            } else {
                Err(Error::InvalidElement(format!("{what} literals over Z take one coordinate")))
            }
        })
        .collect()
}

fn classify_z(ideal_coords: &[Vec<i64>], mult_coords: &[Vec<i64>], check: Check) -> Result<Classified> {
    if check == Check::Homogeneous {
        return Err(Error::Unsupported(
            "homogeneity is defined for trivial-extension rings only".into(),
        ));
    }
    let gens = single_coords(ideal_coords, "ideal")?;
    let s_gens = single_coords(mult_coords, "multiplicative-set")?;
    let mut d = ZIdeal::new(0);
    for a in &gens {
        if *a == i64::MIN {
            return Err(Error::InvalidElement("generator magnitude too large".into()));
        }
        d = ZIdeal::new(num_integer::Integer::gcd(&d.modulus(), &a.unsigned_abs()) as i64);
    }
    let s = match check {
        Check::SPrime | Check::SMaximal => ZMultSet::new(&s_gens)?,
        _ => ZMultSet::new(&[])?,
    };
    let cert = match check {
        Check::Prime | Check::SPrime => z_is_s_prime(&d, &s)?,
        _ => z_is_s_maximal(&d, &s)?,
    };
    let ideal_echo = json!(gens.iter().map(|a| a.unsigned_abs().to_string()).collect::<Vec<_>>());
    let mult_echo = json!(s_gens.iter().map(|a| a.unsigned_abs().to_string()).collect::<Vec<_>>());
    Ok((cert.verdict, ideal_echo, mult_echo, Some(z_certificate_json(&cert))))
}

fn pair_list(
    m: &ModuleDescriptor,
    coords: &[Vec<i64>],
    what: &str,
) -> Result<Vec<(i64, ModuleElement)>> {
    let width = 1 + m.factors().len();
    coords
        .iter()
        .map(|c| {
            if c.len() != width {
                return Err(Error::InvalidElement(format!(
                    "{what} literals for this ring take {width} coordinates"
                )));
            }
            Ok((c[0], m.element(&c[1..])?))
        })
        .collect()
}

fn pair_string(a: impl std::fmt::Display, x: &ModuleElement) -> String {
    let mut parts = vec![a.to_string()];
    parts.extend(x.coords().iter().map(|c| c.to_string()));
    print_coords(&parts)
}

fn classify_zte(
    m: &ModuleDescriptor,
    ideal_coords: &[Vec<i64>],
    mult_coords: &[Vec<i64>],
    check: Check,
) -> Result<Classified> {
    let gens = pair_list(m, ideal_coords, "ideal")?;
    let s_pairs = pair_list(m, mult_coords, "multiplicative-set")?;
    let j = zte_ideal(m, &gens)?;
    let trivial = [(1i64, m.zero())];
    let (verdict, certificate) = match check {
        Check::Prime => {
            let c = zte_is_s_prime(&j, &trivial)?;
            (c.verdict, Some(z_certificate_json(&c)))
        }
        Check::Maximal => {
            let c = zte_is_s_maximal(&j, &trivial)?;
            (c.verdict, Some(z_certificate_json(&c)))
        }
        Check::SPrime => {
            let c = zte_is_s_prime(&j, &s_pairs)?;
            (c.verdict, Some(z_certificate_json(&c)))
        }
        Check::SMaximal => {
            let c = zte_is_s_maximal(&j, &s_pairs)?;
            (c.verdict, Some(z_certificate_json(&c)))
        }
        Check::Homogeneous => (zte_is_homogeneous(&j), None),
    };
    let ideal_echo =
        json!(j.generators().iter().map(|(a, x)| pair_string(a, x)).collect::<Vec<_>>());
    let mult_echo =
        json!(s_pairs.iter().map(|(a, x)| pair_string(a, x)).collect::<Vec<_>>());
    Ok((verdict, ideal_echo, mult_echo, certificate))
}

fn classify_finite(
    ring: &RingDescriptor,
    ideal_coords: &[Vec<i64>],
    mult_coords: &[Vec<i64>],
    check: Check,
) -> Result<Classified> {
    let gens: Vec<RingElement> =
        ideal_coords.iter().map(|c| ring.element(c)).collect::<Result<_>>()?;
    let s_gens: Vec<RingElement> =
        mult_coords.iter().map(|c| ring.element(c)).collect::<Result<_>>()?;
    let i = ideal_generated(ring, &gens)?;
    let (verdict, certificate) = match check {
        Check::Prime => (is_prime(&i)?, None),
        Check::Maximal => (is_maximal(&i)?, None),
        Check::SPrime => {
            let s = mult_set_generated(ring, &s_gens)?;
            let c = is_s_prime_residual(&i, &s)?;
            (c.verdict, Some(finite_certificate_json(&c)))
        }
        Check::SMaximal => {
            let s = mult_set_generated(ring, &s_gens)?;
            let c = is_s_maximal_residual(&i, &s)?;
            (c.verdict, Some(finite_certificate_json(&c)))
        }
        Check::Homogeneous => {
            extension_parts(ring)?;
            (components(&i)?.is_homogeneous, None)
        }
    };
    let echo = |elems: &[RingElement]| {
        json!(elems.iter().map(|e| print_coords(e.coords())).collect::<Vec<_>>())
    };
    Ok((verdict, echo(&gens), echo(&s_gens), certificate))
}

// ====== list ======

fn ring_is_infinite(r: &RingDescriptor) -> bool {
    match r {
        RingDescriptor::Integers => true,
        RingDescriptor::TrivialExtension(m) => m.base() == BaseRing::Integers,
        RingDescriptor::Product(a, b) => ring_is_infinite(a) || ring_is_infinite(b),
        RingDescriptor::Residue(_) => false,
    }
}

fn ideal_item(i: &Ideal) -> Value {
    json!({
        "generators": i.generators().iter().map(|g| print_coords(g.coords())).collect::<Vec<_>>(),
        "cardinality": i.cardinality(),
    })
}

fn submodule_item(n: &Submodule) -> Value {
    json!({
        "generators": n.generators().iter().map(|g| print_coords(g.coords())).collect::<Vec<_>>(),
        "cardinality": n.cardinality(),
    })
}

fn list(ring_text: &str, mult_text: &str, what: What, started: Instant) -> Result<CliOutcome> {
    let ring = parse_ring(ring_text)?;
    if ring_is_infinite(&ring) {
        return Err(Error::Unsupported("listing requires a finite ring".into()));
    }
    let mult_coords = parse_element_list(mult_text)?;
    let s_gens: Vec<RingElement> =
        mult_coords.iter().map(|c| ring.element(c)).collect::<Result<_>>()?;
    let items: Vec<Value> = match what {
        What::Ideals => enumerate_ideals(&ring)?.iter().map(ideal_item).collect(),
        What::Spec => {
            let mut out = Vec::new();
            for i in enumerate_ideals(&ring)? {
                if is_prime(&i)? {
                    out.push(ideal_item(&i));
                }
            }
            out
        }
        What::Max => {
            let mut out = Vec::new();
            for i in enumerate_ideals(&ring)? {
                if is_maximal(&i)? {
                    out.push(ideal_item(&i));
                }
            }
            out
        }
        What::SpecS => {
            let s = mult_set_generated(&ring, &s_gens)?;
            spec_s(&ring, &s)?.iter().map(ideal_item).collect()
        }
        What::MaxS => {
            let s = mult_set_generated(&ring, &s_gens)?;
            max_s(&ring, &s)?.iter().map(ideal_item).collect()
        }
        What::Submodules => {
            let (_, m) = extension_parts(&ring)?;
            enumerate_submodules(&m)?.iter().map(submodule_item).collect()
        }
    };
    let inputs = json!({
        "ring": print_ring(&ring),
        "multSet": s_gens.iter().map(|e| print_coords(e.coords())).collect::<Vec<_>>(),
        "what": what.label(),
    });
    let doc = document("list", inputs, "items", json!(items), None, started);
    Ok(CliOutcome { document: doc, exit_code: 0, write_to: None })
}

// ====== verify ======

fn verify(
    suite: Option<String>,
    examples: bool,
    search: Option<String>,
    catalog_path: Option<PathBuf>,
    json_path: Option<PathBuf>,
    started: Instant,
) -> Result<CliOutcome> {
    let catalog = match &catalog_path {
        Some(p) => {
            let text = std::fs::read_to_string(p).map_err(|e| {
                Error::PreconditionViolated(format!("cannot read catalog {}: {e}", p.display()))
            })?;
            serde_json::from_str::<CatalogSpec>(&text)
                .map_err(|e| Error::PreconditionViolated(format!("invalid catalog file: {e}")))?
        }
        None => CatalogSpec::default(),
    };
    let (mode, name, report) = if examples {
        ("examples", "examples".to_string(), reproduce_examples()?)
    } else if let Some(s) = suite {
        let r = run_suite(&s, &catalog)?;
        ("suite", s, r)
    } else {
        let t = search.expect("clap requires one verification goal");
        let r = search_counterexamples(&t, &catalog)?;
        ("search", t, r)
    };
    let exit_code = if report.passed() { 0 } else { 1 };
    let inputs = json!({
        "mode": mode,
        "name": name,
        "catalog": catalog_path.as_ref().map(|p| p.display().to_string()),
    });
    let report_value = serde_json::to_value(&report)
        .map_err(|e| Error::Internal(format!("report serialization: {e}")))?;
    let doc = document("verify", inputs, "report", report_value, None, started);
    Ok(CliOutcome { document: doc, exit_code, write_to: json_path })
}
