use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use hecke_lab::cache::{Cache, DEFAULT_CACHE_DIR};
use hecke_lab::character::{cached_table, ch_cprime_scaled, chi, frobenius_ch, install_table, MAX_TABLE_N};
use hecke_lab::checks::{check_suite, Status, CHECKS};
use hecke_lab::csf::{csf, CsfBatch};
use hecke_lab::lab::{
    counterexample_search, decompose_codominant, modular_relation, smooth_reduce, Decomposition, Lab, MomentGraph,
    DECOMPOSE_BUDGET, VERIFY_MAX_N,
};
use hecke_lab::{Basis, Error, HessenbergFunction, LaurentQ, Partition, Permutation, SymmetricFunction};

#[derive(Parser)]
#[command(name = "hecke-lab", version, about = "Kazhdan-Lusztig characters, chromatic functions and Hessenberg combinatorics")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,

    /// Cache directory for KL tables, character tables and chromatic batches.
    #[arg(long, global = true, default_value = DEFAULT_CACHE_DIR)]
    cache_dir: PathBuf,

    /// Neither read nor write the cache.
    #[arg(long, global = true)]
    no_cache: bool,

    /// Worker threads for batch computations.
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,

    /// Exit with status 1 when the result is negative (NOT FOUND, UNKNOWN, FAIL).
    #[arg(long, global = true)]
    expect: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Latex,
}

#[derive(Subcommand)]
enum Command {
    /// KL polynomial P_{z,w}, or the whole column of w.
    Kl {
        #[arg(long)]
        w: String,
        #[arg(long)]
        z: Option<String>,
    },
    /// C'_w in the standard basis.
    Cprime {
        #[arg(long)]
        w: String,
    },
    /// chi^lambda(T_w).
    Chi {
        #[arg(long)]
        lambda: String,
        #[arg(long)]
        w: String,
    },
    /// Frobenius character ch(C'_w).
    Ch {
        #[arg(long)]
        w: String,
        #[arg(long, default_value = "s")]
        basis: String,
    },
    /// Chromatic quasisymmetric function of the indifference graph of m.
    Csf {
        #[arg(long)]
        m: String,
        #[arg(long, default_value = "m")]
        basis: String,
    },
    /// Codominant permutation with the same character as a smooth w.
    SmoothReduce {
        #[arg(long)]
        w: String,
    },
    /// Transpositions below w.
    MomentGraph {
        #[arg(long)]
        w: String,
    },
    /// Expansion of C'_w C'_s for smooth w with sw < w < ws.
    Modular {
        #[arg(long)]
        w: String,
        #[arg(long)]
        s: usize,
    },
    /// Search for m0, m2 with (1+q) csf(m1) = q csf(m0) + csf(m2).
    Counterexample {
        #[arg(long)]
        m: String,
        /// Try every shift q^a and drop the edge-count filter.
        #[arg(long)]
        general: bool,
    },
    /// Write ch(C'_w) as an N[q]-combination of codominant characters.
    Decompose {
        #[arg(long)]
        w: String,
        #[arg(long, default_value_t = DECOMPOSE_BUDGET)]
        budget: usize,
    },
    /// Run exhaustive checks over S_n; `--name` takes a comma-separated list, `list` shows them.
    Check {
        #[arg(long)]
        name: String,
        #[arg(long, default_value_t = 4)]
        n: usize,
    },
    /// Enumerate Hessenberg functions on [n].
    Hessenberg {
        #[arg(long)]
        n: usize,
    },
}

struct Output {
    text: String,
    json: Value,
    latex: String,
    negative: bool,
}

impl Output {
    fn plain(text: String, json: Value) -> Self {
        Output { latex: text.clone(), text, json, negative: false }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(cli.threads.max(1)).build_global() {
        eprintln!("warning: {e}");
    }
    let cache = (!cli.no_cache).then(|| Cache::new(&cli.cache_dir));
    let mut app = App { lab: Lab::new(), cache, loaded: Vec::new() };
    match app.run(&cli.command) {
        Ok(out) => {
            match cli.format {
                Format::Text => println!("{}", out.text),
                Format::Json => println!("{}", serde_json::to_string_pretty(&out.json).expect("JSON values serialize")),
                Format::Latex => println!("{}", out.latex),
            }
            if let Err(e) = app.save() {
                eprintln!("warning: cache not written: {e:#}");
            }
            if out.negative && cli.expect {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

struct App {
    lab: Lab,
    cache: Option<Cache>,
    /// `(kind, n, size when loaded)` for everything read from disk.
    loaded: Vec<(&'static str, usize, usize)>,
}

impl App {
    fn kl(&mut self, n: usize) -> Result<&mut hecke_lab::KlTable> {
        if !self.loaded.iter().any(|(k, m, _)| *k == "kl" && *m == n) {
            let mut size = 0;
            if let Some(cache) = &self.cache {
                match cache.load_kl(n) {
                    Ok(Some(t)) => {
                        size = t.column_count();
                        self.lab.insert_kl(t);
                    }
                    Ok(None) => {}
                    Err(e) => eprintln!("warning: ignoring cached KL table: {e}"),
                }
            }
            self.loaded.push(("kl", n, size));
        }
        Ok(self.lab.kl(n))
    }

    fn characters(&mut self, n: usize) {
        if n > MAX_TABLE_N || cached_table(n).is_some() {
            return;
        }
        if let Some(cache) = &self.cache {
            match cache.load_characters(n) {
                Ok(Some(t)) => {
                    install_table(t);
                    self.loaded.push(("chi", n, 1));
                }
                Ok(None) => {}
                Err(e) => eprintln!("warning: ignoring cached character table: {e}"),
            }
        }
    }

    fn csf_batch(&mut self, n: usize) -> std::sync::Arc<CsfBatch> {
        if !self.lab.has_csf(n) {
            if let Some(cache) = &self.cache {
                match cache.load_csf(n) {
                    Ok(Some(b)) => {
                        self.lab.insert_csf(b);
                        self.loaded.push(("csf", n, 1));
                    }
                    Ok(None) => {}
                    Err(e) => eprintln!("warning: ignoring cached chromatic batch: {e}"),
                }
            }
        }
        self.lab.csf_batch(n)
    }

    fn was_loaded(&self, kind: &str, n: usize) -> Option<usize> {
        self.loaded.iter().find(|(k, m, _)| *k == kind && *m == n).map(|(_, _, s)| *s)
    }

    /// Writes anything computed in this run that the cache did not already hold.
    fn save(&self) -> Result<()> {
        let Some(cache) = &self.cache else {
            return Ok(());
        };
        for t in self.lab.kl_tables() {
            if self.was_loaded("kl", t.n()).is_none_or(|s| s < t.column_count()) && t.column_count() > 0 {
                cache.store_kl(t)?;
            }
        }
        for n in 1..=MAX_TABLE_N {
            if let Some(t) = cached_table(n) {
                if self.was_loaded("chi", n).is_none() {
                    cache.store_characters(&t)?;
                }
            }
        }
        for batch in self.lab.csf_batches() {
            if self.was_loaded("csf", batch.n()).is_none() {
                cache.store_csf(batch)?;
            }
        }
        Ok(())
    }

    fn run(&mut self, cmd: &Command) -> Result<Output> {
        match cmd {
            Command::Kl { w, z } => {
                let w = perm(w)?;
                let kl = self.kl(w.n())?;
                match z {
                    Some(z) => {
                        let z = Permutation::parse_with_n(z, w.n()).map_err(input)?;
                        let p = kl.p(&z, &w)?;
                        Ok(Output {
                            text: p.to_string(),
                            json: json!({ "z": z, "w": w, "p": p }),
                            latex: p.to_latex(),
                            negative: false,
                        })
                    }
                    None => {
                        let col = kl.column(&w)?;
                        let text = col.iter().map(|(z, p)| format!("{z}: {p}")).collect::<Vec<_>>().join("\n");
                        let latex = col
                            .iter()
                            .map(|(z, p)| format!("P_{{{z},{w}}} = {}", p.to_laurent().to_latex()))
                            .collect::<Vec<_>>()
                            .join("\n");
                        let entries: Vec<Value> =
                            col.iter().map(|(z, p)| json!({ "z": z, "p": p.to_laurent() })).collect();
                        Ok(Output { text, json: json!({ "w": w, "column": entries }), latex, negative: false })
                    }
                }
            }
            Command::Cprime { w } => {
                let w = perm(w)?;
                let c = self.kl(w.n())?.cprime_normalized(&w)?;
                Ok(Output { text: c.to_string(), json: serde_json::to_value(&c)?, latex: c.to_latex(), negative: false })
            }
            Command::Chi { lambda, w } => {
                let w = perm(w)?;
                let lam: Partition = lambda.parse().map_err(input)?;
                if lam.size() != w.n() {
                    return Err(input(Error::SizeMismatch { expected: w.n(), found: lam.size() }));
                }
                self.characters(w.n());
                let v = if w.n() <= MAX_TABLE_N {
                    hecke_lab::character::character_table(w.n())?.chi(&lam, &w)?
                } else {
                    chi(&lam, &w)?
                };
                Ok(Output {
                    text: v.to_string(),
                    json: json!({ "lambda": lam, "w": w, "chi": v }),
                    latex: v.to_latex(),
                    negative: false,
                })
            }
            Command::Ch { w, basis } => {
                let w = perm(w)?;
                let basis = parse_basis(basis)?;
                self.characters(w.n());
                let l = w.length() as i64;
                let kl = self.kl(w.n())?;
                let f = if w.n() <= MAX_TABLE_N {
                    ch_cprime_scaled(kl, &w)?.scale_integer(&LaurentQ::monomial(1.into(), -l))
                } else {
                    frobenius_ch(&kl.cprime_normalized(&w)?)?
                };
                Ok(symmetric_output(&f.to_basis(basis)))
            }
            Command::Csf { m, basis } => {
                let m = hess(m)?;
                let basis = parse_basis(basis)?;
                Ok(symmetric_output(&csf(&m).to_basis(basis)))
            }
            Command::SmoothReduce { w } => {
                let w = perm(w)?;
                let r = smooth_reduce(&w).map_err(input)?;
                Ok(Output::plain(r.to_string(), json!({ "w": w, "reduced": r })))
            }
            Command::MomentGraph { w } => {
                let w = perm(w)?;
                let g = MomentGraph::of(&w);
                Ok(Output::plain(g.to_string(), serde_json::to_value(&g)?))
            }
            Command::Modular { w, s } => {
                let w = perm(w)?;
                self.characters(w.n());
                let kl = self.kl(w.n())?;
                let rel = match modular_relation(kl, &w, *s, VERIFY_MAX_N) {
                    Err(e @ (Error::PreconditionViolated(_) | Error::OutOfRange(_))) => return Err(input(e)),
                    other => other?,
                };
                let mut json = serde_json::to_value(&rel)?;
                json["identity"] = Value::String(rel.identity());
                Ok(Output { text: rel.to_string(), json, latex: rel.identity(), negative: rel.verified == Some(false) })
            }
            Command::Counterexample { m, general } => {
                let m1 = hess(m)?;
                let batch = self.csf_batch(m1.n());
                let report = counterexample_search(&batch, &m1, *general)?;
                Ok(Output {
                    text: report.to_string(),
                    json: serde_json::to_value(&report)?,
                    latex: report.to_string(),
                    negative: !report.found(),
                })
            }
            Command::Decompose { w, budget } => {
                let w = perm(w)?;
                self.characters(w.n());
                let kl = self.kl(w.n())?;
                let d = decompose_codominant(kl, &w, MAX_TABLE_N, *budget)?;
                let negative = match &d {
                    Decomposition::Found { verified, .. } => *verified == Some(false),
                    Decomposition::Unknown { .. } => true,
                };
                Ok(Output { text: d.to_string(), json: serde_json::to_value(&d)?, latex: d.to_string(), negative })
            }
            Command::Check { name, n } => {
                if name == "list" {
                    let text = CHECKS
                        .iter()
                        .map(|(c, lim, what)| format!("{c} (n <= {lim}): {what}"))
                        .collect::<Vec<_>>()
                        .join("\n");
                    let json = CHECKS.iter().map(|(c, lim, what)| json!({ "check": c, "max_n": lim, "about": what })).collect();
                    return Ok(Output::plain(text, Value::Array(json)));
                }
                self.characters(*n);
                self.kl(*n)?;
                let names: Vec<&str> = name.split(',').map(str::trim).collect();
                if names.iter().any(|c| matches!(*c, "codominant-csf" | "csf-oracle" | "modular-law" | "epos")) {
                    self.csf_batch(*n);
                }
                let reports = match check_suite(&mut self.lab, *n, &names) {
                    Err(e @ (Error::Parse(_) | Error::TooLarge(_) | Error::OutOfRange(_))) => return Err(input(e)),
                    other => other?,
                };
                let text = reports.iter().map(|r| r.to_string()).collect::<Vec<_>>().join("\n");
                let json = match reports.as_slice() {
                    [one] => serde_json::to_value(one)?,
                    many => serde_json::to_value(many)?,
                };
                Ok(Output {
                    latex: text.clone(),
                    text,
                    json,
                    negative: reports.iter().any(|r| r.status != Status::Pass),
                })
            }
            Command::Hessenberg { n } => {
                if *n == 0 || *n > 12 {
                    bail!(input(Error::OutOfRange(format!("n = {n}; enumeration supports 1..=12"))));
                }
                let all = HessenbergFunction::enumerate(*n);
                let text = all
                    .iter()
                    .map(|m| format!("{m}\t{}\t{}", m.codominant_permutation(), m.edge_count()))
                    .collect::<Vec<_>>()
                    .join("\n");
                let json = all
                    .iter()
                    .map(|m| json!({ "m": m, "w": m.codominant_permutation(), "edges": m.edge_count() }))
                    .collect();
                Ok(Output::plain(text, Value::Array(json)))
            }
        }
    }
}

fn input(e: Error) -> anyhow::Error {
    anyhow::Error::new(e).context("invalid input")
}

fn perm(s: &str) -> Result<Permutation> {
    s.parse().map_err(input).with_context(|| format!("reading permutation {s:?}"))
}

fn hess(s: &str) -> Result<HessenbergFunction> {
    s.parse().map_err(input).with_context(|| format!("reading Hessenberg function {s:?}"))
}

fn parse_basis(s: &str) -> Result<Basis> {
    Basis::ALL
        .into_iter()
        .find(|b| b.letter().to_string() == s)
        .ok_or_else(|| input(Error::Parse(format!("basis {s:?}; expected one of m, e, h, p, s"))))
}

fn symmetric_output(f: &SymmetricFunction) -> Output {
    Output { text: f.to_string(), json: f.to_json_value(), latex: f.to_latex(), negative: false }
}
