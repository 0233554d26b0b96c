use std::time::{Duration, Instant};

use handelman::graph::{fmt_set, WeightedGraph};
use handelman::handelman::{
    graph_bound, graph_bound_with, handelman_rank, rank_bounds, verify_certificate, BoundReport, HandelmanCertificate,
};
use handelman::hierarchies::{ls_operator_bound, ls_operator_bound_with, sherali_adams_bound, sherali_adams_bound_with, zeta_closed_form};
use handelman::lp::SolveOptions;
use handelman::maxcut::{maxcut_handelman_bound, maxcut_rank};
use handelman::poly::stable_set_poly;
use handelman::reproduce::{Session, CRITERIA};
use handelman::stable::{
    defect, fractional_clique_cover, fractional_stability, max_weight_stable_set, stability_number,
    unweighted_stability_number,
};
use handelman::Error;
use rayon::prelude::*;
use serde_json::json;

use crate::input::{load_graph, read_file, CliError};
use crate::report::{Cell, Format, Report, Table};
use crate::{Cli, Command};

pub struct Outcome {
    pub output: String,
    pub code: u8,
}

impl Outcome {
    fn ok(output: String) -> Self {
        Outcome { output, code: 0 }
    }
}

pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let load = |source: &str| load_graph(source, cli.mode, cli.seed);
    let render = |r: Report| Ok(Outcome::ok(r.render(cli.format, cli.approx)));
    match &cli.command {
        Command::Stab { graph } => {
            let g = load(graph)?;
            let (alpha, set) = max_weight_stable_set(&g);
            render(Report::default().field("alpha", alpha).field("stable_set", fmt_set(set)))
        }
        Command::Fracstab { graph } => render(Report::default().field("alpha_star", fractional_stability(&load(graph)?)?)),
        Command::Cover { graph, t } => {
            let cover = fractional_clique_cover(&load(graph)?, *t)?;
            let mut table = Table::new("cliques", &["clique", "multiplier"]);
            for (c, lambda) in &cover.multipliers {
                table.push(vec![fmt_set(*c).into(), lambda.clone().into()]);
            }
            render(Report {
                table: Some(table),
                ..Report::default().field("t", *t).field("rho_t", cover.value)
            })
        }
        Command::Handelman { graph, t } => {
            let r = graph_bound(&load(graph)?, *t)?;
            render(Report::default().field("t", *t).field("p_han", r.value))
        }
        Command::Rank { graph } => {
            let res = handelman_rank(&load(graph)?)?;
            render(Report {
                text_lines: res.trace.iter().map(|b| format!("p_han^({}) = {}", b.t, b.value)).collect(),
                table: Some(trace_table(&res.trace, "p_han")),
                table_hidden_in_text: true,
                ..Report::default().field("rank", res.rank).field("alpha", res.alpha)
            })
        }
        Command::Certificate { graph, t } => {
            let r = graph_bound(&load(graph)?, *t)?;
            let Some(cert) = r.certificate else {
                return Ok(Outcome {
                    output: format!("no certificate at order {t}: p_han = INF\n"),
                    code: 1,
                });
            };
            certificate_output(&cert, cli.format)
        }
        Command::VerifyCert { certificate, graph } => {
            let cert = HandelmanCertificate::from_json(&read_file(certificate)?)?;
            let g = load(graph)?;
            let valid = verify_certificate(&cert, &stable_set_poly(&g))?;
            let word = if valid { "VALID" } else { "INVALID" };
            let output = match cli.format {
                Format::Text => format!("{word}\n"),
                Format::Json => format!(
                    "{}\n",
                    json!({"valid": valid, "lambda": cert.lambda.to_string(), "t": cert.t, "terms": cert.terms.len()})
                ),
                Format::Tsv => format!("valid\tlambda\tt\tterms\n{valid}\t{}\t{}\t{}\n", cert.lambda, cert.t, cert.terms.len()),
            };
            Ok(Outcome {
                output,
                code: if valid { 0 } else { 1 },
            })
        }
        Command::Bounds { graph } => {
            let g = load(graph)?;
            let b = rank_bounds(&g)?;
            let alpha = stability_number(&g);
            let d = defect(&g, &alpha)?;
            render(
                Report::default()
                    .field("lower", b.lower)
                    .field("upper1", b.upper1)
                    .field("upper2", b.upper2)
                    .field("alpha", alpha)
                    .field("alpha_star", fractional_stability(&g)?)
                    .field("defect", d.value),
            )
        }
        Command::Sa { graph, t } => {
            let r = sherali_adams_bound(&load(graph)?, *t)?;
            render(Report::default().field("t", *t).field("sa", r.value))
        }
        Command::Ls1 { graph } => render(Report::default().field("ls1", ls_operator_bound(&load(graph)?)?.value)),
        Command::Zeta { graph, t } => {
            let g = load(graph)?;
            let alpha = unweighted_stability_number(g.graph());
            let z = zeta_closed_form(alpha as u64, *t)?;
            render(Report::default().field("t", *t).field("alpha", alpha).field("zeta", z))
        }
        Command::Maxcut { graph, t } => {
            let r = maxcut_handelman_bound(&load(graph)?, *t)?;
            render(Report::default().field("t", *t).field("bound", r.value))
        }
        Command::MaxcutRank { graph } => {
            let res = maxcut_rank(&load(graph)?)?;
            render(Report {
                text_lines: res.trace.iter().map(|b| format!("bound^({}) = {}", b.t, b.value)).collect(),
                table: Some(trace_table(&res.trace, "bound")),
                table_hidden_in_text: true,
                ..Report::default().field("rank", res.rank).field("max_cut", res.max_cut)
            })
        }
        Command::Compare { graphs, tmax, timeout } => {
            let loaded = graphs
                .iter()
                .map(|s| load(s).map(|g| (s.clone(), g)))
                .collect::<Result<Vec<_>, _>>()?;
            let limit = Duration::from_secs_f64(timeout.max(0.0));
            let table = pool(cli.jobs)?.install(|| compare(&loaded, *tmax, limit))?;
            render(Report {
                table: Some(table),
                ..Report::default()
            })
        }
        Command::Reproduce { only } => reproduce(cli, only),
    }
}

fn trace_table(trace: &[BoundReport], name: &str) -> Table {
    let mut table = Table::new("trace", &["t", name, "seconds"]);
    for b in trace {
        table.push(vec![b.t.into(), b.value.clone().into(), format!("{:.3}", b.elapsed.as_secs_f64()).into()]);
    }
    table
}

fn certificate_output(cert: &HandelmanCertificate, format: Format) -> Result<Outcome, CliError> {
    let output = match format {
        Format::Json => format!("{}\n", cert.to_json()?),
        Format::Text => {
            let mut out = format!("lambda = {}\nt = {}\nterms = {}\n", cert.lambda, cert.t, cert.terms.len());
            for line in cert.product_form() {
                out.push_str(&format!("  {line}\n"));
            }
            out
        }
        Format::Tsv => {
            let mut out = String::from("T\tI\tc\n");
            for term in &cert.terms {
                out.push_str(&format!("{}\t{}\t{}\n", fmt_set(term.t_set), fmt_set(term.i_set), term.c));
            }
            out
        }
    };
    Ok(Outcome::ok(output))
}

fn pool(jobs: u64) -> Result<rayon::ThreadPool, CliError> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs as usize)
        .build()
        .map_err(|e| CliError::Lib(Error::InvalidParameter(e.to_string())))
}

fn timed(limit: Duration, f: impl FnOnce(&SolveOptions) -> handelman::Result<BoundReport>) -> handelman::Result<Cell> {
    let opts = SolveOptions {
        deadline: Some(Instant::now() + limit),
    };
    match f(&opts) {
        Ok(r) => Ok(r.value.into()),
        Err(Error::Timeout) => Ok("TIMEOUT".into()),
        Err(Error::TooLarge(_)) => Ok("TOO_LARGE".into()),
        Err(e) => Err(e),
    }
}

struct GraphColumns {
    alpha: Cell,
    alpha_star: Cell,
    ls1: Cell,
    unweighted_alpha: usize,
}

fn compare(graphs: &[(String, WeightedGraph)], tmax: usize, limit: Duration) -> Result<Table, CliError> {
    let per_graph: Vec<GraphColumns> = graphs
        .par_iter()
        .map(|(_, g)| -> handelman::Result<GraphColumns> {
            Ok(GraphColumns {
                alpha: stability_number(g).into(),
                alpha_star: fractional_stability(g)?.into(),
                ls1: timed(limit, |o| ls_operator_bound_with(g, o))?,
                unweighted_alpha: unweighted_stability_number(g.graph()),
            })
        })
        .collect::<handelman::Result<_>>()?;
    let tasks: Vec<(usize, usize)> = graphs
        .iter()
        .enumerate()
        .flat_map(|(k, (_, g))| (1..=tmax.min(g.n())).map(move |t| (k, t)))
        .collect();
    let rows: Vec<Vec<Cell>> = tasks
        .par_iter()
        .map(|&(k, t)| -> handelman::Result<Vec<Cell>> {
            let (name, g) = &graphs[k];
            let cols = &per_graph[k];
            Ok(vec![
                name.as_str().into(),
                t.into(),
                cols.alpha.clone(),
                cols.alpha_star.clone(),
                fractional_clique_cover(g, t)?.value.into(),
                timed(limit, |o| graph_bound_with(g, t, o))?,
                timed(limit, |o| sherali_adams_bound_with(g, t, o))?,
                cols.ls1.clone(),
                zeta_closed_form(cols.unweighted_alpha as u64, t)?.into(),
            ])
        })
        .collect::<handelman::Result<_>>()?;
    let mut table = Table::new(
        "rows",
        &["graph", "t", "alpha", "alpha_star", "rho_t", "p_han_t", "sa_t", "ls1", "zeta_t"],
    );
    for row in rows {
        table.push(row);
    }
    Ok(table)
}

fn reproduce(cli: &Cli, only: &[usize]) -> Result<Outcome, CliError> {
    let ids: Vec<usize> = if only.is_empty() { (1..=CRITERIA).collect() } else { only.to_vec() };
    if let Some(bad) = ids.iter().find(|&&id| id == 0 || id > CRITERIA) {
        return Err(Error::InvalidParameter(format!("criteria are numbered 1..={CRITERIA}, got {bad}")).into());
    }
    let mut session = Session::new(cli.seed)?;
    let text = cli.format == Format::Text;
    let outcomes = session.run(&ids, |o| {
        if text {
            println!("{}", o.summary_line());
            for line in &o.details {
                println!("    {line}");
            }
        }
    });
    let passed = outcomes.iter().filter(|o| o.passed).count();
    let output = match cli.format {
        Format::Text => format!("{passed}/{} criteria passed (seed {})\n", outcomes.len(), cli.seed),
        Format::Json => {
            let list: Vec<_> = outcomes
                .iter()
                .map(|o| {
                    json!({
                        "id": o.id,
                        "title": o.title,
                        "passed": o.passed,
                        "seconds": o.elapsed.as_secs_f64(),
                        "details": o.details,
                    })
                })
                .collect();
            format!("{}\n", serde_json::to_string_pretty(&json!({"seed": cli.seed, "criteria": list})).map_err(Error::from)?)
        }
        Format::Tsv => {
            let mut out = String::from("id\tpassed\tseconds\ttitle\n");
            for o in &outcomes {
                out.push_str(&format!("{}\t{}\t{:.3}\t{}\n", o.id, o.passed, o.elapsed.as_secs_f64(), o.title));
            }
            out
        }
    };
    Ok(Outcome {
        output,
        code: if passed == outcomes.len() { 0 } else { 1 },
    })
}
