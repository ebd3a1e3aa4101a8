//! Command-line surface over the qlie kernel.
//!
//! Exit codes: 0 all checks pass, 1 a validation or axiom check failed,
//! 2 parse or usage error, 3 internal fault.

mod format;
mod report;

use std::process::ExitCode;
use std::time::Instant;

use qlie::bialg::{classical_double, dualize, validate_bialgebra, ClassicalRMatrix};
use qlie::dual::{
    build_r_matrix, check_quasitriangular, check_qybe, quantum_double, verify_canonical_gram,
    verify_canonical_laws, verify_double_cross_relations, DualGen, PairingContext,
};
use qlie::hopf::HopfContext;
use qlie::pbw::{build_algebra, Gen};
use qlie::tensor::TensorElement;
use qlie::Error as KernelError;

use format::{parse_spec, print_spec, SpecFile};
use report::Report;

const DEFAULT_ORDER: usize = 4;
const DEFAULT_HCAP: usize = 3;
const GRAM_CAP: usize = 3;

const USAGE: &str = "\
usage: qlie <command> [options]

commands:
  validate  -i FILE                       check every axiom of the spec
  quantize  -i FILE [--order N] [--show relations|coproduct|antipode|all]
  check     -i FILE [--order N] [--hcap K] [--suite hopf|double|canonical|rmatrix|all]
  dualize   -i FILE -o FILE               write the dual spec
  double    -i FILE -o FILE               write the classical double
  rmatrix   -i FILE [--order N]           build R from the [r] section and check it
  pair      -i FILE --left \"z0 e0\" --right \"X0 H0\" [--order N]

options:
  --json    emit the machine-readable report on stdout
";

enum CmdError {
    Usage(String),
    Parse(String),
    Kernel(KernelError),
    Io(String),
}

impl From<KernelError> for CmdError {
    fn from(e: KernelError) -> Self {
        CmdError::Kernel(e)
    }
}

struct Args {
    command: String,
    input: Option<String>,
    output: Option<String>,
    order: usize,
    hcap: usize,
    show: String,
    suite: String,
    left: Option<String>,
    right: Option<String>,
    json: bool,
}

fn parse_args(argv: &[String]) -> Result<Args, CmdError> {
    let mut args = Args {
        command: String::new(),
        input: None,
        output: None,
        order: DEFAULT_ORDER,
        hcap: DEFAULT_HCAP,
        show: "relations".to_string(),
        suite: "all".to_string(),
        left: None,
        right: None,
        json: false,
    };
    let mut it = argv.iter();
    args.command = it
        .next()
        .cloned()
        .ok_or_else(|| CmdError::Usage("missing command".into()))?;
    while let Some(flag) = it.next() {
        let mut value = |name: &str| -> Result<String, CmdError> {
            it.next()
                .cloned()
                .ok_or_else(|| CmdError::Usage(format!("flag {name} needs a value")))
        };
        match flag.as_str() {
            "-i" | "--input" => args.input = Some(value("-i")?),
            "-o" | "--output" => args.output = Some(value("-o")?),
            "--order" => {
                args.order = value("--order")?
                    .parse()
                    .map_err(|_| CmdError::Usage("bad --order value".into()))?
            }
            "--hcap" => {
                args.hcap = value("--hcap")?
                    .parse()
                    .map_err(|_| CmdError::Usage("bad --hcap value".into()))?
            }
            "--show" => args.show = value("--show")?,
            "--suite" => args.suite = value("--suite")?,
            "--left" => args.left = Some(value("--left")?),
            "--right" => args.right = Some(value("--right")?),
            "--json" => args.json = true,
            other => return Err(CmdError::Usage(format!("unknown flag `{other}`"))),
        }
    }
    Ok(args)
}

fn load(args: &Args) -> Result<SpecFile, CmdError> {
    let path = args
        .input
        .as_ref()
        .ok_or_else(|| CmdError::Usage("-i FILE is required".into()))?;
    let text = std::fs::read_to_string(path)
        .map_err(|e| CmdError::Io(format!("cannot read {path}: {e}")))?;
    parse_spec(&text).map_err(|e| CmdError::Parse(format!("{path}: {e}")))
}

fn inline(t: &TensorElement, letters: &[(&str, &str)]) -> String {
    t.display_with(letters).replace('\n', " + ")
}

fn cmd_validate(args: &Args, rep: &mut Report) -> Result<(), CmdError> {
    let file = load(args)?;
    let v = validate_bialgebra(&file.spec)?;
    rep.push_check("validate-bialgebra", &v);
    Ok(())
}

fn cmd_quantize(args: &Args, rep: &mut Report) -> Result<(), CmdError> {
    let file = load(args)?;
    rep.order = Some(args.order);
    let ctx = HopfContext::new(build_algebra(&file.spec, args.order)?);
    let alg = &ctx.alg;
    let show_relations = matches!(args.show.as_str(), "relations" | "all");
    let show_coproduct = matches!(args.show.as_str(), "coproduct" | "all");
    let show_antipode = matches!(args.show.as_str(), "antipode" | "all");
    if !(show_relations || show_coproduct || show_antipode) {
        return Err(CmdError::Usage(format!("unknown --show `{}`", args.show)));
    }
    if show_relations {
        for i in 0..alg.dim_h() {
            for j in i + 1..alg.dim_h() {
                let c = alg.commutator(&alg.generator(Gen::H(i)), &alg.generator(Gen::H(j)));
                rep.push_output(format!("[H{i}, H{j}] = {c}"));
            }
        }
        for i in 0..alg.dim_h() {
            for mu in 0..alg.dim_v() {
                let series = alg.from_xpoly(&alg.a_series[i][mu]);
                rep.push_output(format!("[H{i}, X{mu}] = {series}"));
            }
        }
    }
    if show_coproduct {
        let letters = [("X", "H"); 2];
        for mu in 0..alg.dim_v() {
            rep.push_output(format!("Delta(X{mu}) = {}", inline(&ctx.delta_x[mu], &letters)));
        }
        for i in 0..alg.dim_h() {
            rep.push_output(format!("Delta(H{i}) = {}", inline(&ctx.delta_h[i], &letters)));
        }
    }
    if show_antipode {
        for mu in 0..alg.dim_v() {
            let s = ctx.antipode(&alg.generator(Gen::X(mu)));
            rep.push_output(format!("S(X{mu}) = {s}"));
        }
        for i in 0..alg.dim_h() {
            rep.push_output(format!("S(H{i}) = {}", ctx.antipode_h[i]));
        }
    }
    Ok(())
}

fn run_hopf_suite(ctx: &HopfContext, hcap: usize, rep: &mut Report, prefix: &str) {
    rep.push_check(
        &format!("{prefix}coassociativity"),
        &ctx.check_coassociativity(hcap),
    );
    rep.push_check(
        &format!("{prefix}coproduct-homomorphism"),
        &ctx.check_coproduct_homomorphism(hcap),
    );
    rep.push_check(&format!("{prefix}antipode"), &ctx.check_antipode_axiom(hcap));
    rep.push_check(&format!("{prefix}counit"), &ctx.check_counit_axiom(hcap));
    rep.push_check(&format!("{prefix}semiclassical"), &ctx.check_semiclassical());
}

fn cmd_check(args: &Args, rep: &mut Report) -> Result<(), CmdError> {
    let file = load(args)?;
    rep.order = Some(args.order);
    rep.hcap = Some(args.hcap);
    let suite = args.suite.as_str();
    if !matches!(suite, "hopf" | "double" | "canonical" | "rmatrix" | "all") {
        return Err(CmdError::Usage(format!("unknown --suite `{suite}`")));
    }
    let v = validate_bialgebra(&file.spec)?;
    rep.push_check("validate-bialgebra", &v);
    if !v.passed() {
        return Ok(());
    }

    if matches!(suite, "hopf" | "all") {
        let ctx = HopfContext::new(build_algebra(&file.spec, args.order)?);
        run_hopf_suite(&ctx, args.hcap, rep, "hopf.");
    }
    if matches!(suite, "double" | "all") {
        let ctx = quantum_double(&file.spec, args.order)?;
        run_hopf_suite(&ctx, args.hcap, rep, "double.");
        rep.push_check(
            "double.cross-relations",
            &verify_double_cross_relations(&file.spec, args.order)?,
        );
    }
    if matches!(suite, "canonical" | "all") {
        let pc = PairingContext::new(&file.spec, args.order.max(GRAM_CAP))?;
        rep.push_check("canonical.coproduct-laws", &verify_canonical_laws(&pc));
        // The capped Gram block is exact only over an abelian H bracket.
        if file.spec.c.is_zero() {
            rep.push_check(
                "canonical.gram-reconstruction",
                &verify_canonical_gram(&pc, GRAM_CAP)?,
            );
        }
    }
    if suite == "rmatrix" || (suite == "all" && file.r.is_some()) {
        let r_seed = file.r.as_ref().ok_or_else(|| {
            CmdError::Usage("the rmatrix suite needs an [r] section in the input".into())
        })?;
        check_r_matrix(&file.spec, r_seed, args.order, rep)?;
    }
    Ok(())
}

fn check_r_matrix(
    spec: &qlie::LieBialgebraSpec,
    seed: &ClassicalRMatrix,
    order: usize,
    rep: &mut Report,
) -> Result<(), CmdError> {
    let ctx = HopfContext::new(build_algebra(spec, order)?);
    match build_r_matrix(&ctx, seed, order) {
        Ok(r) => {
            rep.push_check("rmatrix.cybe", &qlie::check_cybe(spec, seed)?);
            rep.push_check("rmatrix.qybe", &check_qybe(&ctx, &r, order));
            rep.push_check(
                "rmatrix.quasitriangular",
                &check_quasitriangular(&ctx, &r, order),
            );
            for line in r.display_with(&[("X", "H"); 2]).lines() {
                rep.push_output(format!("R: {line}"));
            }
            Ok(())
        }
        Err(KernelError::CybeViolation { report }) => {
            rep.push_check("rmatrix.cybe", &report);
            Ok(())
        }
        Err(e) => Err(e.into()),
    }
}

fn cmd_transform(args: &Args, rep: &mut Report, double: bool) -> Result<(), CmdError> {
    let file = load(args)?;
    let out_path = args
        .output
        .as_ref()
        .ok_or_else(|| CmdError::Usage("-o FILE is required".into()))?;
    let spec = if double {
        classical_double(&file.spec)?
    } else {
        dualize(&file.spec)?
    };
    let text = print_spec(&SpecFile { spec, r: None });
    std::fs::write(out_path, text)
        .map_err(|e| CmdError::Io(format!("cannot write {out_path}: {e}")))?;
    rep.push_output(format!("wrote {out_path}"));
    Ok(())
}

fn cmd_rmatrix(args: &Args, rep: &mut Report) -> Result<(), CmdError> {
    let file = load(args)?;
    rep.order = Some(args.order);
    let seed = file
        .r
        .as_ref()
        .ok_or_else(|| CmdError::Parse("input has no [r] section".into()))?;
    check_r_matrix(&file.spec, seed, args.order, rep)
}

fn parse_primal_word(text: &str) -> Result<Vec<Gen>, CmdError> {
    text.split_whitespace()
        .map(|tok| {
            if tok.len() < 2 {
                return Err(CmdError::Parse(format!("bad generator token `{tok}`")));
            }
            let (head, idx) = tok.split_at(1);
            let idx: usize = idx
                .parse()
                .map_err(|_| CmdError::Parse(format!("bad generator token `{tok}`")))?;
            match head {
                "X" => Ok(Gen::X(idx)),
                "H" => Ok(Gen::H(idx)),
                _ => Err(CmdError::Parse(format!("bad generator token `{tok}`"))),
            }
        })
        .collect()
}

fn parse_dual_word(text: &str) -> Result<Vec<DualGen>, CmdError> {
    text.split_whitespace()
        .map(|tok| {
            if tok.len() < 2 {
                return Err(CmdError::Parse(format!("bad generator token `{tok}`")));
            }
            let (head, idx) = tok.split_at(1);
            let idx: usize = idx
                .parse()
                .map_err(|_| CmdError::Parse(format!("bad generator token `{tok}`")))?;
            match head {
                "z" => Ok(DualGen::Z(idx)),
                "e" => Ok(DualGen::E(idx)),
                _ => Err(CmdError::Parse(format!("bad generator token `{tok}`"))),
            }
        })
        .collect()
}

fn cmd_pair(args: &Args, rep: &mut Report) -> Result<(), CmdError> {
    let file = load(args)?;
    rep.order = Some(args.order);
    let left = parse_dual_word(
        args.left
            .as_ref()
            .ok_or_else(|| CmdError::Usage("--left WORD is required".into()))?,
    )?;
    let right = parse_primal_word(
        args.right
            .as_ref()
            .ok_or_else(|| CmdError::Usage("--right WORD is required".into()))?,
    )?;
    for g in &left {
        let ok = match g {
            DualGen::Z(mu) => *mu < file.spec.dim_v,
            DualGen::E(i) => *i < file.spec.dim_h,
        };
        if !ok {
            return Err(CmdError::Parse("dual generator index out of range".into()));
        }
    }
    let pc = PairingContext::new(&file.spec, args.order)?;
    let u = pc.primal.alg.normal_order(&right)?;
    let value = pc.pair_word(&left, &u);
    rep.push_output(format!("pair = {}", qlie::format_rat(&value)));
    Ok(())
}

fn status_code(status: &str) -> u8 {
    match status {
        "pass" => 0,
        "fail" => 1,
        "parse-error" => 2,
        _ => 3,
    }
}

fn error_report(command: &str, e: CmdError) -> Report {
    let mut rep = Report::new(command);
    match e {
        CmdError::Usage(msg) => {
            rep.status = "parse-error".to_string();
            rep.push_output(format!("usage error: {msg}"));
            rep.push_output(USAGE.trim_end().to_string());
        }
        CmdError::Parse(msg) | CmdError::Io(msg) => {
            rep.status = "parse-error".to_string();
            rep.push_output(msg);
        }
        CmdError::Kernel(err) => {
            if err.is_internal() {
                rep.status = "internal-fault".to_string();
                rep.push_output(err.to_string());
            } else {
                match err {
                    KernelError::InvalidSpec { report } => {
                        rep.status = "fail".to_string();
                        rep.push_check("validate-bialgebra", &report);
                    }
                    KernelError::CybeViolation { report } => {
                        rep.status = "fail".to_string();
                        rep.push_check("rmatrix.cybe", &report);
                    }
                    other => {
                        rep.status = "parse-error".to_string();
                        rep.push_output(other.to_string());
                    }
                }
            }
        }
    }
    rep
}

fn run(argv: &[String]) -> (Report, u8) {
    let args = match parse_args(argv) {
        Ok(a) => a,
        Err(e) => {
            let rep = error_report("(usage)", e);
            let code = status_code(&rep.status);
            return (rep, code);
        }
    };
    let start = Instant::now();
    let mut rep = Report::new(&args.command);
    let result = match args.command.as_str() {
        "validate" => cmd_validate(&args, &mut rep),
        "quantize" => cmd_quantize(&args, &mut rep),
        "check" => cmd_check(&args, &mut rep),
        "dualize" => cmd_transform(&args, &mut rep, false),
        "double" => cmd_transform(&args, &mut rep, true),
        "rmatrix" => cmd_rmatrix(&args, &mut rep),
        "pair" => cmd_pair(&args, &mut rep),
        other => Err(CmdError::Usage(format!("unknown command `{other}`"))),
    };
    match result {
        Ok(()) => {
            rep.timing_ms = start.elapsed().as_millis();
            let code = if rep.failed() { 1 } else { 0 };
            (rep, code)
        }
        Err(e) => {
            let mut rep = error_report(&args.command, e);
            rep.timing_ms = start.elapsed().as_millis();
            let code = status_code(&rep.status);
            (rep, code)
        }
    }
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().skip(1).collect();
    if argv.is_empty() {
        eprint!("{USAGE}");
        return ExitCode::from(2);
    }
    let json = argv.iter().any(|a| a == "--json");
    let (rep, code) = run(&argv);
    if json {
        println!("{}", rep.to_json());
    } else {
        print!("{}", rep.render_human());
    }
    ExitCode::from(code)
}
