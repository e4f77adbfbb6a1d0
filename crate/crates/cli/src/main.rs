use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use omlkit::demos::{check_lattice, describe_check, run_demo, DemoOptions, Predicate};
use omlkit::exactlin::{RaySeedFile, DEFAULT_CLOSURE_CAP};
use omlkit::lattice::format::{Generator, LatticeFile};
use omlkit::povm::{validate_povm, PovmFile, DEFAULT_TOL};
use omlkit::products::{find_entangled_atoms, verify_product_conditions, ProductEmbeddingFile};
use omlkit::report::{fmt_f64, Report};
use omlkit::FiniteOml;

const CAP_VAR: &str = "OMLKIT_CLOSURE_CAP";

/// Exact checks for finite orthomodular lattices, subspace lattices and POVMs.
#[derive(Parser)]
#[command(name = "omlkit", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run lattice predicates on a lattice file or a generator.
    Check(CheckArgs),
    /// Replay one of the built-in demonstrations.
    Demo(DemoArgs),
    /// Write a lattice file from a generator spec.
    Gen(GenArgs),
    /// Verify the four product conditions for an embedding file.
    Product(ProductArgs),
    /// Validate a POVM file.
    Povm(PovmArgs),
}

#[derive(Args)]
struct CheckArgs {
    /// Lattice file (JSON).
    file: Option<PathBuf>,
    /// Generator spec instead of a file: boolean:N, mo:N, o6, pasted:N,M,...
    #[arg(long = "gen", value_name = "SPEC", conflicts_with = "file")]
    generator: Option<String>,
    #[arg(long)]
    piron: bool,
    #[arg(long)]
    orthomodular: bool,
    #[arg(long)]
    commutation_symmetry: bool,
    #[arg(long)]
    atomic: bool,
    #[arg(long)]
    complete: bool,
    #[arg(long)]
    irreducible: bool,
    #[arg(long)]
    covering: bool,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct DemoArgs {
    /// prbox-boolean, prbox-quantum, entangled-atom, no-cloning, cabello,
    /// cabello-commuting, sequential-povm, entwinement or gleason-2d.
    name: String,
    /// Angle in radians for sequential-povm.
    #[arg(long, allow_negative_numbers = true)]
    theta: Option<f64>,
    /// JSON file overriding the demo's default rays or angles.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct GenArgs {
    /// boolean:N, mo:N, o6, pasted:N,M,... or closure:SEEDFILE.
    spec: String,
    #[arg(short, long)]
    out: PathBuf,
}

#[derive(Args)]
struct ProductArgs {
    #[arg(long)]
    embedding: PathBuf,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct PovmArgs {
    file: PathBuf,
    #[arg(long, default_value_t = DEFAULT_TOL)]
    tol: f64,
    #[arg(long)]
    json: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Check(a) => check(a),
        Command::Demo(a) => demo(a),
        Command::Gen(a) => generate(a),
        Command::Product(a) => product(a),
        Command::Povm(a) => povm(a),
    }
}

fn closure_cap() -> Result<usize> {
    match std::env::var(CAP_VAR) {
        Ok(v) => v.trim().parse().with_context(|| format!("{CAP_VAR}={v:?} is not a number")),
        Err(_) => Ok(DEFAULT_CLOSURE_CAP),
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn emit(report: &Report, json: bool) -> bool {
    if json {
        println!("{}", report.to_json());
    } else {
        print!("{}", report.to_text());
    }
    report.passed()
}

fn load_lattice(file: Option<&Path>, spec: Option<&str>) -> Result<(String, FiniteOml)> {
    let cap = closure_cap()?;
    match (file, spec) {
        (Some(path), None) => {
            let text = read(path)?;
            let l = LatticeFile::from_json(&text)
                .and_then(|f| f.build(cap))
                .with_context(|| format!("in {}", path.display()))?;
            Ok((path.display().to_string(), l))
        }
        (None, Some(spec)) => Ok((spec.to_string(), generator(spec)?.build(cap)?)),
        _ => bail!("give a lattice file or --gen SPEC"),
    }
}

fn generator(spec: &str) -> Result<Generator> {
    if let Some(path) = spec.strip_prefix("closure:") {
        let text = read(Path::new(path))?;
        let seed: RaySeedFile =
            serde_json::from_str(&text).with_context(|| format!("bad ray seed file {path}"))?;
        return Ok(Generator::Closure { seed });
    }
    Ok(Generator::from_spec(spec)?)
}

fn check(a: CheckArgs) -> Result<bool> {
    let (name, l) = load_lattice(a.file.as_deref(), a.generator.as_deref())?;
    let flags = [
        (a.piron, Predicate::Piron),
        (a.orthomodular, Predicate::Orthomodular),
        (a.commutation_symmetry, Predicate::CommutationSymmetry),
        (a.atomic, Predicate::Atomic),
        (a.complete, Predicate::Complete),
        (a.irreducible, Predicate::Irreducible),
        (a.covering, Predicate::Covering),
    ];
    let chosen: Vec<Predicate> = flags.iter().filter(|(on, _)| *on).map(|&(_, p)| p).collect();
    Ok(emit(&check_lattice(&name, &l, &chosen), a.json))
}

fn demo(a: DemoArgs) -> Result<bool> {
    let config = a.config.as_deref().map(read).transpose()?;
    let opts = DemoOptions {
        config,
        theta: a.theta,
        closure_cap: Some(closure_cap()?),
    };
    let report = run_demo(&a.name, &opts)?;
    Ok(emit(&report, a.json))
}

fn generate(a: GenArgs) -> Result<bool> {
    let l = generator(&a.spec)?.build(closure_cap()?)?;
    let text = LatticeFile::from_lattice(&l).to_json();
    std::fs::write(&a.out, text + "\n").with_context(|| format!("cannot write {}", a.out.display()))?;
    println!("wrote {} elements to {}", l.len(), a.out.display());
    Ok(true)
}

fn product(a: ProductArgs) -> Result<bool> {
    let text = read(&a.embedding)?;
    let file: ProductEmbeddingFile =
        serde_json::from_str(&text).with_context(|| format!("bad embedding file {}", a.embedding.display()))?;
    let base = a.embedding.parent().unwrap_or(Path::new("."));
    let pe = file.load(base, closure_cap()?)?;
    let rep = verify_product_conditions(&pe)?;
    let p = pe.product();

    let mut r = Report::new(format!("product {}", a.embedding.display()), "products/product conditions");
    let failing: Vec<&str> = rep.piron.entries().iter().filter(|(_, c)| !c.holds()).map(|(n, _)| *n).collect();
    let first_witness = rep
        .piron
        .entries()
        .iter()
        .find(|(_, c)| !c.holds())
        .map(|(n, c)| format!("{n}: {}", describe_check(p, c)))
        .unwrap_or_default();
    r.step(
        "check_piron",
        "condition 1: the product is a Piron lattice",
        "holds",
        rep.piron_ok(),
        if failing.is_empty() { String::new() } else { format!("fails {}; {first_witness}", failing.join(", ")) },
    );
    let (fa, fb) = (pe.factor_a(), pe.factor_b());
    let pairs: Vec<String> = rep
        .independence
        .iter()
        .take(6)
        .map(|&(x, y)| format!("({}, {})", fa.name(x), fb.name(y)))
        .collect();
    r.step(
        "verify_product_conditions",
        "condition 2: i_A(α) ∧ i_B(β) ≠ 0 for nonzero α, β",
        "holds",
        rep.independence_ok(),
        pairs.join("; "),
    );
    let blocks: Vec<String> = rep
        .boolean_blocks
        .iter()
        .take(6)
        .map(|f| format!("blocks ({}, {}): {:?}", f.block_a, f.block_b, f.defect))
        .collect();
    r.step(
        "verify_product_conditions",
        "condition 3: block pairs generate maximal Boolean products",
        "holds",
        rep.boolean_block_ok(),
        blocks.join("; "),
    );
    let missing: Vec<&str> = rep.generation.iter().take(6).map(|&e| p.name(e)).collect();
    r.step(
        "verify_product_conditions",
        "condition 4: the factor images generate the product",
        "holds",
        rep.generation_ok(),
        if missing.is_empty() {
            String::new()
        } else {
            format!("{} not generated, e.g. {}", rep.generation.len(), missing.join(" "))
        },
    );
    let entangled: Vec<&str> = find_entangled_atoms(&pe).into_iter().map(|e| p.name(e)).collect();
    r.step(
        "find_entangled_atoms",
        "atoms not of the form i_A(α) ∧ i_B(β)",
        "reported",
        true,
        if entangled.is_empty() {
            "none".to_string()
        } else {
            format!("{} entangled: {}", entangled.len(), entangled.join(" "))
        },
    );
    Ok(emit(&r, a.json))
}

fn povm(a: PovmArgs) -> Result<bool> {
    if !(a.tol.is_finite() && a.tol >= 0.0) {
        return Err(anyhow!("--tol must be a non-negative number"));
    }
    let effects = PovmFile::from_json(&read(&a.file)?)?.to_effects()?;
    let d = validate_povm(&effects, a.tol)?;
    let mut r = Report::new(format!("povm {}", a.file.display()), "POVMs/effects");
    let worst_herm = d.effects.iter().map(|e| e.hermitian_deviation).fold(0.0, f64::max);
    let lo = d.effects.iter().map(|e| e.min_eigenvalue).fold(f64::INFINITY, f64::min);
    let hi = d.effects.iter().map(|e| e.max_eigenvalue).fold(f64::NEG_INFINITY, f64::max);
    r.step(
        "validate_povm",
        format!("{} effects of dimension {}", effects.len(), effects[0].dim()),
        "every effect is Hermitian",
        d.hermitian(),
        format!("max deviation {}", fmt_f64(worst_herm)),
    );
    r.step(
        "validate_povm",
        "spectra",
        "every eigenvalue lies in [0, 1]",
        d.bounded(),
        format!("eigenvalues within [{}, {}]", fmt_f64(lo), fmt_f64(hi)),
    );
    r.step(
        "validate_povm",
        "completeness",
        "the effects sum to I",
        d.complete(),
        format!("max deviation {}", fmt_f64(d.identity_deviation)),
    );
    Ok(emit(&r, a.json))
}
