//! `realforms`: command-line front end.
//!
//! Every subcommand prints a short human-readable report, or with `--json`
//! a versioned envelope whose `payload` is deterministic for fixed inputs.
//! Exit status: 0 on success, 1 on a domain error or a failed check, 2 on a
//! usage error.

mod render;

use std::io::Write;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::Context;
use clap::{ArgGroup, Parser, Subcommand, ValueEnum};
use realforms::cohomology::{self, CohomologyLimits};
use realforms::exact::{self, WitnessCase};
use realforms::forms::{self, ClassicalKind, SpinCountQuery, SpinFamily};
use realforms::galois::{self, TwoTorsionCharacter};
use realforms::group::{GroupSpec, DEFAULT_ORDER_CAP};
use realforms::stack::{self, ActionDocument, EquivariantAction, GroupRef};
use realforms::{load_group, selftest, Error, FiniteGroup, Subgroup};
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

const SCHEMA_VERSION: u32 = 1;

#[derive(Parser, Debug)]
#[command(
    name = "realforms",
    version,
    about = "Real points of classifying stacks of finite groups with involution"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Print a JSON envelope instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Largest group order accepted when loading groups.
    #[arg(long, global = true, env = "REALFORMS_CAP")]
    cap: Option<usize>,
    /// More log output (repeatable).
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    verbose: u8,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Cocycle classes (Galois cohomology set) with their stabilizers.
    H1 {
        #[arg(long)]
        group: String,
    },
    /// Components of the real realization: count, stabilizers, mass.
    Components {
        #[arg(long)]
        group: String,
    },
    /// Strong involutions grouped by central invariant.
    StrongInvolutions {
        #[arg(long)]
        group: String,
    },
    /// Checks the twisting bijection for one base cocycle, or for all.
    TwistCheck {
        #[arg(long)]
        group: String,
        /// Base cocycle (label or index); all cocycles when omitted.
        #[arg(long)]
        base: Option<String>,
    },
    /// Restricts a ±1 character to each component's stabilizer.
    Character {
        #[arg(long)]
        group: String,
        /// One value ±1 per element, comma separated, in element order.
        #[arg(
            long,
            value_delimiter = ',',
            allow_hyphen_values = true,
            required = true
        )]
        values: Vec<i8>,
    },
    /// Fixed-point groupoid of an equivariant action.
    Stack {
        #[arg(long)]
        action: String,
    },
    /// Induces an action from a σ-stable subgroup and compares groupoids.
    Induce {
        #[arg(long)]
        group: String,
        /// Subgroup elements (labels or indices), comma separated.
        #[arg(long, value_delimiter = ',', required = true)]
        subgroup: Vec<String>,
        /// Action of the subgroup; the one-point action when omitted.
        #[arg(long)]
        action: Option<String>,
    },
    /// Quotients an action by a free normal σ-stable subgroup and compares.
    Quotient {
        #[arg(long)]
        action: String,
        /// Normal subgroup elements (labels or indices), comma separated.
        #[arg(long, value_delimiter = ',', required = true)]
        normal: Vec<String>,
    },
    /// Compares the fixed-point groupoids of two actions.
    Compare {
        #[arg(long)]
        action: String,
        #[arg(long)]
        other: String,
    },
    /// Real quadratic forms: component lists for O and SO, sign matching.
    Forms {
        #[command(subcommand)]
        kind: FormsCommand,
    },
    /// Component counts of the split spin groups.
    Spin {
        #[arg(value_enum)]
        family: FamilyArg,
        n: usize,
    },
    /// Number of components for a classical kind (O, SO, Spin-odd,
    /// Spin-even) or a finite group.
    #[command(group(ArgGroup::new("target").required(true).args(["kind", "group"])))]
    WittRank {
        kind: Option<String>,
        params: Vec<usize>,
        #[arg(long)]
        group: Option<String>,
    },
    /// Runs an exact-arithmetic witness case.
    #[command(group(ArgGroup::new("source").required(true).args(["case", "file"])))]
    Witness {
        #[arg(long)]
        case: Option<String>,
        #[arg(long)]
        file: Option<String>,
    },
    /// Mod-2 cohomology dimensions of a finite group.
    Cohomology {
        #[arg(long)]
        group: String,
        #[arg(long, default_value_t = 4)]
        max_degree: usize,
    },
    /// Mod-2 cohomology of the real realization, summed over components.
    RealizationCohomology {
        #[arg(long)]
        group: String,
        #[arg(long, default_value_t = 4)]
        max_degree: usize,
    },
    /// Runs the bundled corpus of reference computations.
    Selftest,
}

#[derive(Subcommand, Debug)]
enum FormsCommand {
    /// Signatures of rank N (components for O(N)).
    O { n: usize },
    /// Signatures with the discriminant of (P, Q) (components for SO(P,Q)).
    So { p: usize, q: usize },
    /// Rank-N signatures with the given discriminant and Hasse signs.
    Match {
        n: usize,
        #[arg(allow_negative_numbers = true)]
        disc: i8,
        #[arg(allow_negative_numbers = true)]
        hasse: i8,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FamilyArg {
    Odd,
    Even,
}

/// What a command produced: a payload, its text rendering, and whether
/// every check it ran succeeded.
struct Output {
    payload: Value,
    text: String,
    ok: bool,
}

impl Output {
    fn new<T: Serialize>(payload: &T, text: String) -> anyhow::Result<Self> {
        Ok(Output {
            payload: serde_json::to_value(payload)?,
            text,
            ok: true,
        })
    }

    fn checked(mut self, ok: bool) -> Self {
        self.ok = ok;
        self
    }
}

/// Inputs seen while running, hashed into the envelope's digest.
struct Inputs {
    hasher: Sha256,
    cap: usize,
}

impl Inputs {
    fn read(&mut self, path: &str) -> anyhow::Result<String> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::InvalidInput(format!("cannot read `{path}`: {e}")))?;
        self.hasher.update(path.as_bytes());
        self.hasher.update([0]);
        self.hasher.update(text.as_bytes());
        self.hasher.update([0]);
        Ok(text)
    }

    fn group(&mut self, arg: &str) -> anyhow::Result<FiniteGroup> {
        let spec = if arg.starts_with("builtin:") {
            GroupSpec::parse_shorthand(arg)?
        } else {
            GroupSpec::from_json(&self.read(arg)?)?
        };
        Ok(load_group(&spec, self.cap)?)
    }

    fn action(&mut self, path: &str) -> anyhow::Result<EquivariantAction> {
        let doc = ActionDocument::from_json(&self.read(path)?)?;
        if let GroupRef::Reference(r) = &doc.group {
            if !r.starts_with("builtin:") {
                self.read(r)?;
            }
        }
        Ok(doc.load(self.cap)?)
    }
}

fn parse_elements(g: &FiniteGroup, items: &[String]) -> anyhow::Result<Vec<usize>> {
    items
        .iter()
        .map(|s| g.parse_element(s.trim()).map_err(Into::into))
        .collect()
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::H1 { .. } => "h1",
        Command::Components { .. } => "components",
        Command::StrongInvolutions { .. } => "strong-involutions",
        Command::TwistCheck { .. } => "twist-check",
        Command::Character { .. } => "character",
        Command::Stack { .. } => "stack",
        Command::Induce { .. } => "induce",
        Command::Quotient { .. } => "quotient",
        Command::Compare { .. } => "compare",
        Command::Forms { .. } => "forms",
        Command::Spin { .. } => "spin",
        Command::WittRank { .. } => "witt-rank",
        Command::Witness { .. } => "witness",
        Command::Cohomology { .. } => "cohomology",
        Command::RealizationCohomology { .. } => "realization-cohomology",
        Command::Selftest => "selftest",
    }
}

fn run(command: &Command, inputs: &mut Inputs) -> anyhow::Result<Output> {
    match command {
        Command::H1 { group } => {
            let g = inputs.group(group)?;
            let report = galois::h1(&g);
            let text = render::h1(&g, &report);
            Output::new(&json!({ "labels": g.labels(), "report": report }), text)
        }
        Command::Components { group } => {
            let g = inputs.group(group)?;
            let report = galois::h1(&g);
            let mass = report.mass();
            let payload = json!({
                "group_order": g.order(),
                "component_count": report.class_count,
                "mass": format!("{}/{}", mass.numer(), mass.denom()),
                "components": report.classes.iter().map(|c| json!({
                    "representative": g.label(c.representative),
                    "stabilizer_order": c.stabilizer_order,
                    "stabilizer_label": c.stabilizer_label,
                    "stabilizer_histogram": c.stabilizer_histogram,
                })).collect::<Vec<_>>(),
            });
            Output::new(&payload, render::components(&g, &report))
        }
        Command::StrongInvolutions { group } => {
            let g = inputs.group(group)?;
            let report = galois::strong_involutions(&g);
            let text = render::strong_involutions(&g, &report);
            Output::new(&json!({ "labels": g.labels(), "report": report }), text)
        }
        Command::TwistCheck { group, base } => {
            let g = inputs.group(group)?;
            let bases = match base {
                Some(b) => vec![g.parse_element(b)?],
                None => galois::cocycles(&g),
            };
            let reports = bases
                .iter()
                .map(|&b| galois::twisting_bijection_check(&g, b))
                .collect::<realforms::Result<Vec<_>>>()?;
            let ok = reports.iter().all(|r| r.passed());
            let text = render::twist_check(&g, &reports);
            Ok(Output::new(&json!({ "passed": ok, "reports": reports }), text)?.checked(ok))
        }
        Command::Character { group, values } => {
            let g = inputs.group(group)?;
            let chi = TwoTorsionCharacter::new(&g, values.clone())?;
            let comps = galois::character_components(&g, &chi);
            let text = render::character(&g, &comps);
            Output::new(&json!({ "components": comps }), text)
        }
        Command::Stack { action } => {
            let a = inputs.action(action)?;
            let report = stack::fixed_point_groupoid(&a)?;
            let text = render::groupoid(&a, &report);
            Output::new(&report, text)
        }
        Command::Induce {
            group,
            subgroup,
            action,
        } => {
            let g = inputs.group(group)?;
            let h = Subgroup::new(&g, parse_elements(&g, subgroup)?)?;
            let hg = h.to_group(&g);
            let a = match action {
                Some(path) => inputs.action(path)?,
                None => EquivariantAction::point(hg),
            };
            let induced = stack::induced_action(&g, &h, &a)?;
            let left = stack::fixed_point_groupoid(&a)?;
            let right = stack::fixed_point_groupoid(&induced)?;
            let cmp = stack::compare_groupoids(&left, &right);
            let text = render::comparison("H-action", "induced G-action", &cmp);
            Ok(Output::new(
                &json!({ "induced_action": induced.to_document(), "comparison": cmp }),
                text,
            )?
            .checked(cmp.equivalent))
        }
        Command::Quotient { action, normal } => {
            let a = inputs.action(action)?;
            let n = Subgroup::new(a.group(), parse_elements(a.group(), normal)?)?;
            let q = stack::quotient_action(&a, &n)?;
            let left = stack::fixed_point_groupoid(&a)?;
            let right = stack::fixed_point_groupoid(&q)?;
            let cmp = stack::compare_groupoids(&left, &right);
            let text = render::comparison("G-action", "quotient action", &cmp);
            Ok(Output::new(
                &json!({ "quotient_action": q.to_document(), "comparison": cmp }),
                text,
            )?
            .checked(cmp.equivalent))
        }
        Command::Compare { action, other } => {
            let left = stack::fixed_point_groupoid(&inputs.action(action)?)?;
            let right = stack::fixed_point_groupoid(&inputs.action(other)?)?;
            let cmp = stack::compare_groupoids(&left, &right);
            let text = render::comparison("first", "second", &cmp);
            Output::new(&cmp, text)
        }
        Command::Forms { kind } => forms_command(kind),
        Command::Spin { family, n } => {
            let family = match family {
                FamilyArg::Odd => SpinFamily::Odd,
                FamilyArg::Even => SpinFamily::Even,
            };
            let cmp = forms::spin_comparison(SpinCountQuery { family, n: *n })?;
            Output::new(&cmp, render::spin(&cmp))
        }
        Command::WittRank {
            kind,
            params,
            group,
        } => {
            let (label, rank) = match (kind, group) {
                (_, Some(g)) => {
                    let g = inputs.group(g)?;
                    (
                        format!("finite group of order {}", g.order()),
                        galois::witt_invariant_rank(&g),
                    )
                }
                (Some(k), None) => {
                    let kind = ClassicalKind::parse(k, params)?;
                    (format!("{kind:?}"), forms::witt_rank(kind)?)
                }
                (None, None) => unreachable!("clap requires a kind or a group"),
            };
            Output::new(
                &json!({ "target": label, "rank": rank }),
                format!("{label}: {rank}\n"),
            )
        }
        Command::Witness { case, file } => {
            let report = match (case, file) {
                (Some(id), _) => exact::run_case(id)?,
                (None, Some(path)) => WitnessCase::from_json(&inputs.read(path)?)?.run()?,
                (None, None) => unreachable!("clap requires a case or a file"),
            };
            let ok = report.passed;
            let text = render::witness(&report);
            Ok(Output::new(&report, text)?.checked(ok))
        }
        Command::Cohomology { group, max_degree } => {
            let g = inputs.group(group)?;
            let limits = cohomology_limits(inputs.cap);
            let profile = cohomology::cohomology_dims_with(&g, *max_degree, &limits)?;
            let ok = profile.d_squared_zero;
            let text = render::profile(&profile);
            Ok(Output::new(&profile, text)?.checked(ok))
        }
        Command::RealizationCohomology { group, max_degree } => {
            let g = inputs.group(group)?;
            let limits = cohomology_limits(inputs.cap);
            let report = cohomology::realization_cohomology_with(&g, *max_degree, &limits)?;
            let text = render::realization(&report);
            Output::new(&report, text)
        }
        Command::Selftest => {
            let report = selftest::run_selftest();
            let ok = report.passed;
            let text = render::selftest(&report);
            Ok(Output::new(&report, text)?.checked(ok))
        }
    }
}

/// The order cap only tightens the cohomology caps when given explicitly.
fn cohomology_limits(cap: usize) -> CohomologyLimits {
    let defaults = CohomologyLimits::default();
    if cap == DEFAULT_ORDER_CAP {
        defaults
    } else {
        defaults.with_order_cap(cap)
    }
}

fn forms_command(kind: &FormsCommand) -> anyhow::Result<Output> {
    let (title, list) = match *kind {
        FormsCommand::O { n } => (format!("O({n})"), forms::o_components(n)?),
        FormsCommand::So { p, q } => {
            let list = forms::so_components(p, q)?;
            let note = if forms::so_assumption_holds(p, q) {
                ""
            } else {
                " [discriminant matching; q ≢ pq mod 2]"
            };
            (format!("SO({p},{q}){note}"), list)
        }
        FormsCommand::Match { n, disc, hasse } => (
            format!("rank {n}, disc {disc:+}, hasse {hasse:+}"),
            forms::matching_signatures(n, disc, hasse)?,
        ),
    };
    let extension = matches!(*kind, FormsCommand::So { p, q } if !forms::so_assumption_holds(p, q));
    let payload = json!({
        "query": title,
        "count": list.len(),
        "discriminant_extension": extension,
        "signatures": list.iter().map(|c| json!({
            "signature": [c.p, c.q],
            "disc_sign": c.disc_sign,
            "hasse_sign": c.hasse_sign,
        })).collect::<Vec<_>>(),
    });
    Output::new(&payload, render::signatures(&title, &list))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let level = match cli.verbose {
        0 => "warn",
        1 => "info",
        _ => "debug",
    };
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(level)).init();

    let name = command_name(&cli.command);
    let mut hasher = Sha256::new();
    for arg in std::env::args().skip(1).filter(|a| a != "--json") {
        hasher.update(arg.as_bytes());
        hasher.update([0]);
    }
    let mut inputs = Inputs {
        hasher,
        cap: cli.cap.unwrap_or(DEFAULT_ORDER_CAP),
    };
    let start = Instant::now();
    let result = run(&cli.command, &mut inputs).context(name);
    let elapsed_ms = start.elapsed().as_millis() as u64;
    let digest = hex::encode(inputs.hasher.finalize());

    let (status, payload, text, code) = match result {
        Ok(out) => {
            let status = if out.ok { "ok" } else { "failed" };
            let code = if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            };
            (status, out.payload, out.text, code)
        }
        Err(err) => {
            let kind = err
                .downcast_ref::<Error>()
                .map_or("InvalidInput", Error::kind);
            let message = err.root_cause().to_string();
            let text = format!("error[{kind}]: {message}\n");
            (
                "error",
                json!({ "kind": kind, "message": message }),
                text,
                ExitCode::from(1),
            )
        }
    };

    if cli.json {
        let envelope = json!({
            "schema_version": SCHEMA_VERSION,
            "command": name,
            "input_digest": digest,
            "status": status,
            "payload": payload,
            "elapsed_ms": elapsed_ms,
        });
        let rendered = serde_json::to_string_pretty(&envelope).expect("serializable");
        let _ = writeln!(std::io::stdout().lock(), "{rendered}");
    } else if status == "error" {
        let _ = write!(std::io::stderr().lock(), "{text}");
    } else {
        let _ = write!(std::io::stdout().lock(), "{text}");
    }
    code
}
