use std::io::Read;

use cofill_core::constructions::{edge_cut_example, multipartite_example, nonminimal_bipartite_example};
use cofill_core::geometry::{max_depth, PointConfig};
use cofill_core::golden::verify_all;
use cofill_core::inequalities::{highdeg_certificate, lobo2_check, low3_certificate, pie_decompose};
use cofill_core::minimality::{is_minimal, is_minimal_exact, necessary_conditions, relaxed_degree_condition};
use cofill_core::numeric::parse_rational;
use cofill_core::pagoda::{pagoda_search, prop9_chain, quadripartite_pagoda, solve_c3_lower, verify_pagoda, Pagoda};
use cofill_core::profile::{
    bound_curve_csv, lower_envelope, nested_gromov, profile_csv, profile_exact, upper_bound_prop7, BoundFunction, Value,
};
use cofill_core::{Cochain, Error};
use serde_json::{json, Value as Json};

use crate::manifest::digest;
use crate::{BoundsCommand, CertifyCommand, Command, ConstructCommand, Global, InputArg, PagodaCommand};

pub const VERIFY_FAILED: u8 = 2;
pub const BUDGET_EXCEEDED: u8 = 3;
pub const BAD_INPUT: u8 = 4;

/// Default `--budget` for `profile`: enough for the full table at `C(n,d) <= 26`.
const PROFILE_BUDGET: u64 = 1 << 26;
/// Default `--budget` for `pagoda search`: moves per seed.
const SEARCH_BUDGET: u64 = 2000;
/// Top density the search is compared against; not a target.
const SEARCH_REFERENCE: f64 = 0.0703125;

#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub kind: String,
    pub message: String,
}

impl CliError {
    pub fn bad_input(kind: &str, message: String) -> Self {
        Self { code: BAD_INPUT, kind: kind.into(), message }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let kind = format!("{e:?}");
        let kind = kind.split(|c: char| !c.is_alphanumeric()).next().unwrap_or("Error").to_string();
        Self { code: BAD_INPUT, kind, message: e.to_string() }
    }
}

pub struct Output {
    pub text: String,
    pub status: u8,
    /// `(input name, sha256)` of every input read.
    pub inputs: Vec<(String, String)>,
}

struct Ctx {
    inputs: Vec<(String, String)>,
}

impl Ctx {
    fn read(&mut self, arg: &InputArg) -> Result<String, CliError> {
        let text = if arg.input == "-" {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s).map_err(|e| CliError::bad_input("io", format!("stdin: {e}")))?;
            s
        } else {
            std::fs::read_to_string(&arg.input).map_err(|e| CliError::bad_input("io", format!("{}: {e}", arg.input)))?
        };
        self.inputs.push((arg.input.clone(), digest(text.as_bytes())));
        Ok(text)
    }

    fn cochain(&mut self, arg: &InputArg) -> Result<Cochain, CliError> {
        Ok(Cochain::from_json_str(&self.read(arg)?)?)
    }

    fn json(&mut self, arg: &InputArg) -> Result<Json, CliError> {
        serde_json::from_str(&self.read(arg)?).map_err(|e| CliError::bad_input("Parse", e.to_string()))
    }
}

fn pretty(v: &Json) -> String {
    serde_json::to_string_pretty(v).expect("json") + "\n"
}

fn ok(text: String) -> (String, u8) {
    (text, 0)
}

fn check(text: String, pass: bool) -> (String, u8) {
    (text, if pass { 0 } else { VERIFY_FAILED })
}

fn bounds_list(s: &str, default_d: impl Fn(usize) -> usize) -> Result<Vec<BoundFunction>, CliError> {
    s.split(',').enumerate().map(|(i, p)| BoundFunction::parse(p, default_d(i)).map_err(CliError::from)).collect()
}

fn parse_list(s: &str) -> Result<Vec<usize>, CliError> {
    s.split(',')
        .map(|x| x.trim().parse().map_err(|_| CliError::bad_input("Parse", format!("not a list of sizes: {s:?}"))))
        .collect()
}

pub fn run(cmd: &Command, g: &Global) -> Result<Output, CliError> {
    let mut ctx = Ctx { inputs: Vec::new() };
    let (text, status) = dispatch(cmd, g, &mut ctx)?;
    Ok(Output { text, status, inputs: ctx.inputs })
}

fn dispatch(cmd: &Command, g: &Global, ctx: &mut Ctx) -> Result<(String, u8), CliError> {
    Ok(match cmd {
        Command::Coboundary(input) => ok(pretty(&ctx.cochain(input)?.coboundary()?.to_json_value())),
        Command::Minimal { input, exact } => {
            let e = ctx.cochain(input)?;
            let v = if *exact { is_minimal_exact(&e)? } else { is_minimal(&e)? };
            ok(pretty(&v.to_json()))
        }
        Command::Fill(input) => ok(pretty(&ctx.cochain(input)?.fill_by_min_link()?.to_json_value())),
        Command::Profile { n, d, envelope } => {
            let p = profile_exact(*n, *d, g.budget.unwrap_or(PROFILE_BUDGET))?;
            let records = if *envelope { lower_envelope(&p.records) } else { p.records.clone() };
            let csv = profile_csv(&records)?;
            (csv, if p.complete { 0 } else { BUDGET_EXCEEDED })
        }
        Command::Bounds(b) => bounds(b)?,
        Command::Construct(c) => construct(c)?,
        Command::Certify(c) => certify(c, ctx)?,
        Command::Pagoda(p) => pagoda(p, g, ctx)?,
        Command::Depth(input) => {
            let p = PointConfig::from_json_str(&ctx.read(input)?)?;
            ok(pretty(&max_depth(&p)?.to_json()))
        }
        Command::VerifyAll => {
            let r = verify_all(g.tolerance)?;
            let mut text = String::new();
            for c in &r.checks {
                text += &format!(
                    "{} {}: observed {}, expected {}, tolerance {}\n",
                    if c.pass { "PASS" } else { "FAIL" },
                    c.name,
                    c.observed,
                    c.expected,
                    c.tolerance
                );
            }
            text += &format!(
                "{} ({} checks, {:.1} ms)\n",
                if r.pass { "all pass" } else { "FAILED" },
                r.checks.len(),
                r.elapsed_ms
            );
            check(text, r.pass)
        }
    })
}

fn bounds(b: &BoundsCommand) -> Result<(String, u8), CliError> {
    Ok(match b {
        BoundsCommand::Curve { phi, samples } => ok(bound_curve_csv(&bounds_list(phi, |_| 2)?, *samples)?),
        BoundsCommand::Eval { phi, alpha } => {
            let f = BoundFunction::parse(phi, 2)?;
            let v = f.eval(&Value::Exact(parse_rational(alpha)?))?;
            ok(pretty(&json!({ "bound": f.label(), "alpha": alpha, "result": v })))
        }
        BoundsCommand::Nested { d, phi, json } => {
            let phis = bounds_list(phi, |i| i + 1)?;
            let r = nested_gromov(*d, &phis)?;
            if *json {
                ok(pretty(&json!({ "d": r.d, "value": r.value, "trace": r.trace })))
            } else {
                ok(format!("{}\n", r.value.to_f64()))
            }
        }
        BoundsCommand::Prop7 { d, alpha } => {
            let p = upper_bound_prop7(*d, &Value::Exact(parse_rational(alpha)?))?;
            ok(pretty(&json!(p)))
        }
    })
}

fn construct(c: &ConstructCommand) -> Result<(String, u8), CliError> {
    Ok(match c {
        ConstructCommand::Multipartite { n, d, parts } => {
            let ex = multipartite_example(*n, *d, &parse_list(parts)?)?;
            let cert = ex.covering_certificate();
            ok(pretty(&json!({
                "E": ex.e_json(),
                "F": ex.f_json(),
                "predicted_e_count": ex.predicted_e_count,
                "predicted_f_count": ex.predicted_f_count,
                "covering_certificate": cert,
                "certifies_minimality": cert.certifies_minimality(),
            })))
        }
        ConstructCommand::EdgeCut { n, s } => {
            let (set, cut) = edge_cut_example(*n, *s)?;
            ok(pretty(&json!({ "S": set.to_json_value(), "delta_S": cut.to_json_value() })))
        }
        ConstructCommand::Bipartite { n, a } => {
            let ex = nonminimal_bipartite_example(*n, *a)?;
            ok(pretty(&json!({
                "E": ex.e.to_json_value(),
                "delta_E": ex.delta.to_json_value(),
                "predicted_delta_count": ex.predicted_delta_count,
                "relaxed_degree_condition": relaxed_degree_condition(&ex.e),
                "necessary_conditions": necessary_conditions(&ex.e)?.passes(),
            })))
        }
    })
}

fn certify(c: &CertifyCommand, ctx: &mut Ctx) -> Result<(String, u8), CliError> {
    Ok(match c {
        CertifyCommand::Pie(input) => {
            let p = pie_decompose(&ctx.cochain(input)?)?;
            let holds = p.identity_holds();
            check(
                pretty(&json!({ "decomposition": p, "pieform": p.pieform().to_string(), "identity_holds": holds })),
                holds,
            )
        }
        CertifyCommand::Lobo2(input) => ok(pretty(&json!(lobo2_check(&ctx.cochain(input)?)?))),
        CertifyCommand::Highdeg { input, beta } => {
            let c = highdeg_certificate(&ctx.cochain(input)?, &parse_rational(beta)?)?;
            check(pretty(&json!({ "certificate": c, "holds": c.holds() })), c.holds())
        }
        CertifyCommand::Low3 { input, tau } => {
            let c = low3_certificate(&ctx.cochain(input)?, *tau)?;
            check(pretty(&json!({ "certificate": c, "holds": c.holds() })), c.holds())
        }
    })
}

fn pagoda(p: &PagodaCommand, g: &Global, ctx: &mut Ctx) -> Result<(String, u8), CliError> {
    Ok(match p {
        PagodaCommand::Verify { input, eps } => {
            let pg = Pagoda::from_json(&ctx.json(input)?)?;
            let r = verify_pagoda(&pg, &parse_rational(eps)?)?;
            check(pretty(&json!({ "report": r, "top_audit": r.top_audit() })), r.passes)
        }
        PagodaCommand::Quadripartite { n, full } => {
            let pg = quadripartite_pagoda(*n)?;
            let r = verify_pagoda(&pg, &parse_rational("0")?)?;
            let mut out = json!({ "n": n, "report": r, "limit": "3/32" });
            if *full {
                out["pagoda"] = pg.to_json();
            }
            check(pretty(&out), r.passes)
        }
        PagodaCommand::Prop9 { eps0 } => match eps0 {
            Some(e) => ok(pretty(&json!(prop9_chain(*e)?))),
            None => {
                let (eps0_star, c3_bound) = solve_c3_lower()?;
                ok(pretty(&json!({ "eps0_star": eps0_star, "c3_bound": c3_bound })))
            }
        },
        PagodaCommand::Search { n, seeds } => {
            let budget = usize::try_from(g.budget.unwrap_or(SEARCH_BUDGET))
                .map_err(|_| CliError::bad_input("InvalidArgument", "budget too large".into()))?;
            let out = pagoda_search(*n, budget, g.seed, *seeds)?;
            check(
                pretty(&json!({
                    "heuristic": true,
                    "seed": out.seed,
                    "moves_per_seed": out.tried,
                    "accepted": out.accepted,
                    "budget_exhausted": out.budget_exhausted,
                    "report": out.report,
                    "top_audit": out.report.top_audit(),
                    "reference_top_density": SEARCH_REFERENCE,
                    "pagoda": out.pagoda.to_json(),
                })),
                out.report.passes,
            )
        }
    })
}
