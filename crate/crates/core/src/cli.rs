//! The `rdlab` command line.
//!
//! Exit codes: `0` when every check is consistent, `2` when a non-probe
//! verification records a `VIOLATION` (or a property check fails), `1` on
//! errors. Probes always exit `0`.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};

use crate::coeffalg::GroupAction;
use crate::crossed::{read_element_file, MultiplierSymbol};
use crate::error::{Error, Result};
use crate::groups::{Group, SphereIndex};
use crate::harness::{self, CoeffSampler, HarnessOptions, InequalityId, InequalityReport, SupportSampler, TrialSpec};
use crate::propj::{self, JParameters, VTarget};
use crate::repnorm::{self, Method, NormOptions};

#[derive(Parser, Clone, Debug, PartialEq, Serialize, Deserialize)]
#[command(name = "rdlab", version, about = "Rapid-decay workbench for reduced crossed products")]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
    /// JSON-lines output; the first line echoes the configuration
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,
    /// Flat CSV table of the reports (`-` for stdout)
    #[arg(long, global = true, value_name = "PATH")]
    pub csv: Option<PathBuf>,
    /// Suppress the human-readable summary
    #[arg(long, global = true)]
    pub quiet: bool,
    /// Element budget for ball enumeration [default: RDLAB_BUDGET or 5000000]
    #[arg(long, global = true)]
    pub budget: Option<usize>,
}

#[derive(Subcommand, Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "subcommand", rename_all = "kebab-case")]
pub enum Command {
    /// Sphere sizes |C_0|, ..., |C_R|
    SphereCount {
        #[arg(long)]
        group: String,
        #[arg(long, default_value_t = 4)]
        radius: usize,
    },
    /// Check the prefix-factorization clauses of property (J) on a ball
    #[command(alias = "propj-check")]
    Propj {
        #[arg(long)]
        group: String,
        #[arg(long, default_value_t = 5)]
        radius: usize,
        #[arg(long, default_value_t = 0.0)]
        alpha: f64,
        #[arg(long, default_value_t = 0.0)]
        beta: f64,
        #[arg(long, default_value_t = 0.0)]
        gamma: f64,
        /// Target length |g| + 1 − s for the remainder instead of |g| − s
        #[arg(long)]
        shifted: bool,
    },
    /// Largest solution count N on a ball
    Nsolutions {
        #[arg(long)]
        group: String,
        #[arg(long, default_value_t = 5)]
        radius: usize,
        #[arg(long, default_value_t = 0.0)]
        mu: f64,
        #[arg(long, default_value_t = 0.0)]
        nu: f64,
    },
    /// Validate an action: relations and the homomorphism property on samples
    ActionCheck {
        #[arg(long)]
        group: String,
        #[arg(long)]
        action: String,
        #[arg(long, default_value_t = 50)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Certified lower bound for ‖X‖
    Norm(NormArgs),
    /// Seeded trials of a proven inequality
    Verify(TrialArgs),
    /// Seeded trials of an open or retracted inequality
    Probe(TrialArgs),
}

#[derive(Args, Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NormArgs {
    #[arg(long)]
    pub group: String,
    #[arg(long, default_value = "trivial:1")]
    pub action: String,
    #[arg(long, value_name = "PATH")]
    pub element_file: PathBuf,
    /// Compression radius [default: support length + 6]
    #[arg(long)]
    pub radius: Option<usize>,
    #[arg(long, default_value_t = 1e-6)]
    pub tol: f64,
    /// Dense singular values (small balls only)
    #[arg(long)]
    pub dense: bool,
    #[arg(long, default_value_t = Method::Lanczos)]
    pub method: Method,
    #[arg(long, default_value_t = 2)]
    pub history: usize,
    #[arg(long, default_value_t = 40)]
    pub krylov: usize,
    #[arg(long, default_value_t = 5000)]
    pub max_iter: usize,
}

#[derive(Args, Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrialArgs {
    /// prop61, cor62_free, cor63_hagprop_a|b, thm64, cor65_free, thm5_polygrowth_op|row,
    /// zprop_section4, prop7_multiplier, probe_desired, probe_mixed
    pub id: InequalityId,
    #[arg(long, default_value = "free:2")]
    pub group: String,
    #[arg(long, default_value = "trivial:1")]
    pub action: String,
    /// Support radius
    #[arg(long, default_value_t = 2)]
    pub k: usize,
    /// Second support radius [default: k]
    #[arg(long)]
    pub l: Option<usize>,
    /// Sphere of the product [default: every m in |k−l|..=k+l]
    #[arg(long)]
    pub m: Option<usize>,
    #[arg(long, default_value_t = 50)]
    pub trials: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = CoeffSampler::Gaussian)]
    pub coeff: CoeffSampler,
    #[arg(long, default_value_t = 1.0)]
    pub scale: f64,
    /// sphere, sphere-subset:N or ball-subset:N [default: sphere-subset:4 for
    /// single-sphere statements, ball-subset:6 otherwise]
    #[arg(long)]
    pub support: Option<SupportSampler>,
    /// Solution bound N [default: measured on B_{j-radius}]
    #[arg(long = "N")]
    pub n_bound: Option<f64>,
    /// Constant M [default: the one the statement provides]
    #[arg(long = "M")]
    pub big_m: Option<f64>,
    /// Constant C (multiplier and mixed probe) [default: from growth, or 1]
    #[arg(long = "C")]
    pub c: Option<f64>,
    /// Exponent s (multiplier and mixed probe) [default: from growth, or 2]
    #[arg(long = "s")]
    pub s: Option<f64>,
    /// Decay rate of the multiplier e^{-λ|g|}
    #[arg(long, default_value_t = 0.5)]
    pub lambda: f64,
    /// Compression radius [default: support length + slack]
    #[arg(long)]
    pub radius: Option<usize>,
    #[arg(long, default_value_t = repnorm::DEFAULT_RADIUS_SLACK)]
    pub slack: usize,
    #[arg(long, default_value_t = 1e-6)]
    pub tol: f64,
    #[arg(long, default_value_t = 40)]
    pub krylov: usize,
    #[arg(long, default_value_t = 2)]
    pub pi_candidates: usize,
    /// Also bound the operator norm of M_{χ_m}(XY)
    #[arg(long)]
    pub operator_diagnostic: bool,
    /// Ball radius on which N is measured
    #[arg(long, default_value_t = 4)]
    pub j_radius: usize,
}

impl RunConfig {
    /// Parse an argument vector whose first entry is the program name.
    pub fn parse_args<I, T>(argv: I) -> std::result::Result<Self, clap::Error>
    where
        I: IntoIterator<Item = T>,
        T: Into<std::ffi::OsString> + Clone,
    {
        Self::try_parse_from(argv)
    }

    /// An argument vector that parses back to `self`.
    pub fn render(&self) -> Vec<String> {
        let mut a = vec!["rdlab".to_string()];
        let flag = |a: &mut Vec<String>, name: &str, v: String| {
            a.push(format!("--{name}"));
            a.push(v);
        };
        match &self.command {
            Command::SphereCount { group, radius } => {
                a.push("sphere-count".into());
                flag(&mut a, "group", group.clone());
                flag(&mut a, "radius", radius.to_string());
            }
            Command::Propj { group, radius, alpha, beta, gamma, shifted } => {
                a.push("propj".into());
                flag(&mut a, "group", group.clone());
                flag(&mut a, "radius", radius.to_string());
                flag(&mut a, "alpha", alpha.to_string());
                flag(&mut a, "beta", beta.to_string());
                flag(&mut a, "gamma", gamma.to_string());
                if *shifted {
                    a.push("--shifted".into());
                }
            }
            Command::Nsolutions { group, radius, mu, nu } => {
                a.push("nsolutions".into());
                flag(&mut a, "group", group.clone());
                flag(&mut a, "radius", radius.to_string());
                flag(&mut a, "mu", mu.to_string());
                flag(&mut a, "nu", nu.to_string());
            }
            Command::ActionCheck { group, action, samples, seed } => {
                a.push("action-check".into());
                flag(&mut a, "group", group.clone());
                flag(&mut a, "action", action.clone());
                flag(&mut a, "samples", samples.to_string());
                flag(&mut a, "seed", seed.to_string());
            }
            Command::Norm(n) => {
                a.push("norm".into());
                flag(&mut a, "group", n.group.clone());
                flag(&mut a, "action", n.action.clone());
                flag(&mut a, "element-file", n.element_file.display().to_string());
                if let Some(r) = n.radius {
                    flag(&mut a, "radius", r.to_string());
                }
                flag(&mut a, "tol", n.tol.to_string());
                if n.dense {
                    a.push("--dense".into());
                }
                flag(&mut a, "method", n.method.to_string());
                flag(&mut a, "history", n.history.to_string());
                flag(&mut a, "krylov", n.krylov.to_string());
                flag(&mut a, "max-iter", n.max_iter.to_string());
            }
            Command::Verify(t) | Command::Probe(t) => {
                a.push(if matches!(self.command, Command::Verify(_)) { "verify" } else { "probe" }.into());
                a.push(t.id.to_string());
                flag(&mut a, "group", t.group.clone());
                flag(&mut a, "action", t.action.clone());
                flag(&mut a, "k", t.k.to_string());
                let opt = |a: &mut Vec<String>, name: &str, v: Option<String>| {
                    if let Some(v) = v {
                        a.push(format!("--{name}"));
                        a.push(v);
                    }
                };
                opt(&mut a, "l", t.l.map(|v| v.to_string()));
                opt(&mut a, "m", t.m.map(|v| v.to_string()));
                flag(&mut a, "trials", t.trials.to_string());
                flag(&mut a, "seed", t.seed.to_string());
                flag(&mut a, "coeff", t.coeff.to_string());
                flag(&mut a, "scale", t.scale.to_string());
                opt(&mut a, "support", t.support.map(|v| v.to_string()));
                opt(&mut a, "N", t.n_bound.map(|v| v.to_string()));
                opt(&mut a, "M", t.big_m.map(|v| v.to_string()));
                opt(&mut a, "C", t.c.map(|v| v.to_string()));
                opt(&mut a, "s", t.s.map(|v| v.to_string()));
                flag(&mut a, "lambda", t.lambda.to_string());
                opt(&mut a, "radius", t.radius.map(|v| v.to_string()));
                flag(&mut a, "slack", t.slack.to_string());
                flag(&mut a, "tol", t.tol.to_string());
                flag(&mut a, "krylov", t.krylov.to_string());
                flag(&mut a, "pi-candidates", t.pi_candidates.to_string());
                if t.operator_diagnostic {
                    a.push("--operator-diagnostic".into());
                }
                flag(&mut a, "j-radius", t.j_radius.to_string());
            }
        }
        if let Some(p) = &self.out {
            flag(&mut a, "out", p.display().to_string());
        }
        if let Some(p) = &self.csv {
            flag(&mut a, "csv", p.display().to_string());
        }
        if self.quiet {
            a.push("--quiet".into());
        }
        if let Some(b) = self.budget {
            flag(&mut a, "budget", b.to_string());
        }
        a
    }

    fn budget(&self) -> usize {
        self.budget.unwrap_or_else(crate::budget_from_env)
    }

    fn header(&self) -> serde_json::Value {
        serde_json::json!({
            "rdlab": env!("CARGO_PKG_VERSION"),
            "argv": self.render(),
            "config": self,
        })
    }
}

/// Parse `std::env::args`, run, and return the exit code.
pub fn main_with_args<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cfg = match RunConfig::parse_args(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match run(&cfg) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            1
        }
    }
}

/// Execute a configuration; `Ok` carries the exit code.
pub fn run(cfg: &RunConfig) -> anyhow::Result<i32> {
    use anyhow::Context;
    let budget = cfg.budget();
    match &cfg.command {
        Command::SphereCount { group, radius } => {
            let g = Group::parse(group).context("--group")?;
            let sizes = g.sphere_sizes(*radius);
            if !cfg.quiet {
                for (k, s) in sizes.iter().enumerate() {
                    println!("{k} {s}");
                }
            }
            let sizes: Vec<String> = sizes.iter().map(u128::to_string).collect();
            emit_record(cfg, &serde_json::json!({ "group": g.spec(), "sphere_sizes": sizes }))?;
            Ok(0)
        }
        Command::Propj { group, radius, alpha, beta, gamma, shifted } => {
            let g = Group::parse(group).context("--group")?;
            let params = JParameters::new(*alpha, *beta, *gamma)?;
            let target = if *shifted { VTarget::ShiftedByOne } else { VTarget::Exact };
            let report = propj::check_j(&g, *radius, &params, target, budget)?;
            if !cfg.quiet {
                println!("{}", if report.pass { "pass" } else { "fail" });
                println!(
                    "elements {} pairs {} violations {}",
                    report.elements_checked,
                    report.pairs_checked,
                    report.violations.len()
                );
                println!(
                    "needed alpha {} beta {} gamma {}",
                    report.alpha_needed, report.beta_needed, report.gamma_needed
                );
            }
            emit_record(cfg, &report)?;
            Ok(if report.pass { 0 } else { 2 })
        }
        Command::Nsolutions { group, radius, mu, nu } => {
            let g = Group::parse(group).context("--group")?;
            let n = propj::max_n_on_ball(&g, *radius, *mu, *nu, budget)?;
            if !cfg.quiet {
                println!("{n}");
            }
            emit_record(cfg, &serde_json::json!({ "group": g.spec(), "radius": radius, "mu": mu, "nu": nu, "N": n }))?;
            Ok(0)
        }
        Command::ActionCheck { group, action, samples, seed } => {
            let g = Group::parse(group).context("--group")?;
            let act = GroupAction::parse(&g, action).context("--action")?;
            let relation = act.relation_defect();
            let hom = homomorphism_defect(&act, *samples, *seed)?;
            let ok = relation <= crate::coeffalg::UNITARY_TOL && hom <= crate::coeffalg::UNITARY_TOL;
            if !cfg.quiet {
                println!("action {} on M_{}(C)", act.spec(), act.dim());
                println!("relation defect {relation:e}");
                println!("homomorphism defect {hom:e} over {samples} samples");
                println!("{}", if ok { "ok" } else { "fail" });
            }
            emit_record(
                cfg,
                &serde_json::json!({
                    "action": act.spec(), "n": act.dim(), "relation_defect": relation,
                    "homomorphism_defect": hom, "ok": ok,
                }),
            )?;
            Ok(if ok { 0 } else { 2 })
        }
        Command::Norm(n) => {
            let g = Group::parse(&n.group).context("--group")?;
            let ctx = Arc::new(GroupAction::parse(&g, &n.action).context("--action")?);
            let x = read_element_file(ctx, &n.element_file)
                .with_context(|| format!("--element-file {}", n.element_file.display()))?;
            let radius = n.radius.unwrap_or_else(|| repnorm::default_radius(&x));
            let opts = NormOptions {
                tol: n.tol,
                max_iter: n.max_iter,
                method: if n.dense { Method::Dense } else { n.method },
                history: n.history,
                krylov: n.krylov,
                budget,
                ..NormOptions::default()
            };
            let est = repnorm::norm_lower(&x, radius, &opts)?;
            if !cfg.quiet {
                println!("{}", serde_json::to_string(&est)?);
            }
            emit_record(cfg, &est)?;
            Ok(0)
        }
        Command::Verify(t) | Command::Probe(t) => {
            let probe = matches!(cfg.command, Command::Probe(_));
            if probe != t.id.is_probe() {
                anyhow::bail!(
                    "`{}` is {}; use `rdlab {}`",
                    t.id,
                    if t.id.is_probe() { "a probe" } else { "a proven inequality" },
                    if t.id.is_probe() { "probe" } else { "verify" }
                );
            }
            let reports = run_trials(t, budget)?;
            write_reports(cfg, &reports)?;
            Ok(if harness::any_violation(&reports) { 2 } else { 0 })
        }
    }
}

fn emit_record<T: Serialize>(cfg: &RunConfig, record: &T) -> Result<()> {
    if let Some(path) = &cfg.out {
        let mut w = BufWriter::new(File::create(path)?);
        serde_json::to_writer(&mut w, &cfg.header()).map_err(std::io::Error::other)?;
        writeln!(w)?;
        serde_json::to_writer(&mut w, record).map_err(std::io::Error::other)?;
        writeln!(w)?;
        w.flush()?;
    }
    Ok(())
}

fn write_reports(cfg: &RunConfig, reports: &[InequalityReport]) -> Result<()> {
    if let Some(path) = &cfg.out {
        let mut w = BufWriter::new(File::create(path)?);
        harness::write_jsonl(&mut w, Some(&cfg.header()), reports)?;
        w.flush()?;
    }
    let csv_stdout = cfg.csv.as_deref().is_some_and(|p| p.as_os_str() == "-");
    if let Some(path) = &cfg.csv {
        if csv_stdout {
            harness::write_csv(std::io::stdout().lock(), reports)?;
        } else {
            let mut w = BufWriter::new(File::create(path)?);
            harness::write_csv(&mut w, reports)?;
            w.flush()?;
        }
    }
    if !cfg.quiet && !csv_stdout {
        print!("{}", harness::summarize(reports));
    }
    Ok(())
}

fn homomorphism_defect(act: &GroupAction, samples: usize, seed: u64) -> Result<f64> {
    use rand::Rng;
    let g = act.group();
    let index = SphereIndex::enumerate(g, 3, 1_000_000)?;
    let ball = index.elements();
    let mut rng = harness::stream(seed, "action-check", 0);
    let mut worst = 0.0f64;
    for _ in 0..samples {
        let a = &ball[rng.random_range(0..ball.len())];
        let b = &ball[rng.random_range(0..ball.len())];
        let x = CoeffSampler::Gaussian.sample(act.dim(), 1.0, &mut rng);
        let ab = g.multiply(a, b)?;
        let lhs = act.apply(&ab, &x)?;
        let rhs = act.apply(a, &act.apply(b, &x)?)?;
        worst = worst.max(lhs.max_abs_diff(&rhs));
    }
    Ok(worst)
}

fn run_trials(t: &TrialArgs, budget: usize) -> Result<Vec<InequalityReport>> {
    use InequalityId::*;
    let sphere_based = matches!(t.id, Prop61 | Cor62Free | Cor63HagpropA | Cor63HagpropB | ProbeDesired);
    let support = t.support.unwrap_or(if sphere_based {
        SupportSampler::SphereSubset(4)
    } else {
        SupportSampler::BallSubset(6)
    });
    let spec = TrialSpec::parse(&t.group, &t.action)?
        .coeff(t.coeff)
        .scale(t.scale)
        .support(support)
        .trials(t.trials)
        .seed(t.seed);
    let opts = HarnessOptions {
        radius: t.radius,
        radius_slack: t.slack,
        norm: NormOptions {
            tol: t.tol,
            krylov: t.krylov,
            budget,
            ..NormOptions::default()
        },
        pi_candidates: t.pi_candidates,
        operator_diagnostic: t.operator_diagnostic,
    };
    let n_bound = || -> Result<f64> {
        match t.n_bound {
            Some(n) => Ok(n),
            None if spec.group().is_free() => Ok(1.0),
            None => Ok(propj::measure_parameters(spec.group(), t.j_radius, budget)?.n as f64),
        }
    };
    let l = t.l.unwrap_or(t.k);
    match t.id {
        Prop61 => harness::verify_prop61(&spec, t.k, n_bound()?, &opts),
        Cor62Free => harness::verify_cor62_free(&spec, t.k, &opts),
        Cor63HagpropA | Cor63HagpropB => harness::verify_hagprop(&spec, t.k, l, t.m, n_bound()?, &opts),
        Thm64 => {
            let n = if t.big_m.is_some() { t.n_bound.unwrap_or(1.0) } else { n_bound()? };
            harness::verify_thm64(&spec, t.k, t.big_m, n, &opts)
        }
        Cor65Free => match t.big_m {
            Some(m) => {
                let mut r = harness::verify_thm64(&spec, t.k, Some(m), 1.0, &opts)?;
                r.iter_mut().for_each(|x| x.inequality_id = Cor65Free);
                Ok(r)
            }
            None => harness::verify_cor65_free(&spec, t.k, &opts),
        },
        Thm5PolygrowthOp | Thm5PolygrowthRow => harness::verify_polygrowth(&spec, t.k, &opts),
        ZpropSection4 => harness::verify_zprop(&spec, t.k, &opts),
        Prop7Multiplier => {
            let rd = match (t.c, t.s) {
                (Some(c), Some(s)) => Some((c, s)),
                (None, None) => None,
                _ => {
                    return Err(Error::OutOfRange {
                        what: "constants",
                        detail: "give both --C and --s, or neither".into(),
                    })
                }
            };
            harness::verify_multiplier(&spec, t.k, &MultiplierSymbol::ExponentialDecay(t.lambda), rd, &opts)
        }
        ProbeDesired => harness::probe_desired(&spec, t.k, l, t.m, n_bound()?, &opts),
        ProbeMixed => {
            if !spec.group().is_free() {
                return Err(Error::InvalidGroup(format!("{} is not a free group", spec.group().spec())));
            }
            harness::probe_mixed(&spec, t.k, t.c.unwrap_or(1.0), t.s.unwrap_or(2.0), &opts)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(s: &str) -> RunConfig {
        RunConfig::parse_args(s.split_whitespace()).unwrap()
    }

    #[test]
    fn examples_parse() {
        let c = parse("rdlab sphere-count --group free:2 --radius 4");
        match &c.command {
            Command::SphereCount { group, radius } => {
                assert_eq!(Group::parse(group).unwrap().kind(), &crate::GroupKind::Free { rank: 2 });
                assert_eq!(*radius, 4);
            }
            other => panic!("{other:?}"),
        }
        let c = parse("rdlab verify thm64 --group fpc:2,3 --trials 50 --seed 1");
        match &c.command {
            Command::Verify(t) => {
                assert_eq!(t.id, InequalityId::Thm64);
                assert_eq!((t.trials, t.seed), (50, 1));
            }
            other => panic!("{other:?}"),
        }
        let c = parse("rdlab norm --group zd:2 --element-file X.el --radius 6");
        match &c.command {
            Command::Norm(n) => {
                assert_eq!(n.element_file, PathBuf::from("X.el"));
                assert_eq!(n.radius, Some(6));
            }
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse("rdlab propj-check --group free:2").command, Command::Propj { .. }));
    }

    #[test]
    fn usage_errors() {
        assert!(RunConfig::parse_args(["rdlab", "frobnicate"]).is_err());
        assert!(RunConfig::parse_args(["rdlab", "verify", "thm99"]).is_err());
        assert!(RunConfig::parse_args(["rdlab", "verify", "thm64", "--support", "ball"]).is_err());
        let cfg = parse("rdlab sphere-count --group free:x --quiet");
        let err = run(&cfg).unwrap_err().to_string();
        assert!(err.contains("--group"), "{err}");
    }

    #[test]
    fn render_round_trip() {
        for s in [
            "rdlab verify cor63_hagprop_a --k 1 --l 2 --m 3 --N 1 --support sphere --quiet",
            "rdlab probe probe_mixed --C 0.7071067811865476 --s 1.5 --csv - --budget 1000",
            "rdlab norm --group zd:2 --element-file X.el --dense --out o.jsonl",
            "rdlab propj --group fpc:2,3 --beta 1 --shifted",
        ] {
            let c = parse(s);
            assert_eq!(RunConfig::parse_args(c.render()).unwrap(), c, "{s}");
            let json = serde_json::to_string(&c).unwrap();
            assert_eq!(serde_json::from_str::<RunConfig>(&json).unwrap(), c);
        }
    }

    #[test]
    fn probe_and_verify_are_separate() {
        let cfg = parse("rdlab verify probe_desired --quiet");
        assert!(run(&cfg).is_err());
        let cfg = parse("rdlab probe thm64 --quiet");
        assert!(run(&cfg).is_err());
    }

    #[test]
    fn corrupted_constant_exits_two() {
        let cfg = parse("rdlab verify thm64 --group free:2 --M 0.01 --trials 2 --k 1 --slack 2 --quiet");
        assert_eq!(run(&cfg).unwrap(), 2);
        let cfg = parse("rdlab verify cor65_free --group free:2 --trials 2 --k 1 --slack 2 --quiet");
        assert_eq!(run(&cfg).unwrap(), 0);
    }
}
