//! `qred`: index, defect and quasi-reductivity from the command line.

mod output;

use std::fs;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use qred::census::{enumerate, flag_census, flag_row, CensusSummary, EnumRow, Verify};
use qred::classical::{
    gl_algebra, parabolic_from_roots, parabolic_so, so_algebra, sp_algebra, zoo, Flag, ZOO_NAMES,
};
use qred::exactlin::format_rat;
use qred::formulas::{
    defect_p_formula, flag_prime, i_zero, index_p_formula, qr_p_formula, qr_roots, render_dynkin, FlagProfile,
    PrimeRule, RootSubset, Series,
};
use qred::jordan::AnalysisReport;
use qred::{Error, LieAlgebra, SampleConfig};

use output::{Format, Table};

#[derive(Parser, Debug)]
#[command(name = "qred", version, about = "Index, Cartan-Duflo rank and quasi-reductivity of algebraic Lie algebras")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Global {
    /// Seed for the random forms.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Independent random forms per rank computation.
    #[arg(long, global = true, default_value_t = 3)]
    trials: usize,
    /// Coordinates are drawn from [-bound, bound].
    #[arg(long, global = true, default_value_t = 1 << 31)]
    bound: u64,
    /// Confirm indices by polynomial elimination (slow above dimension ~15).
    #[arg(long, global = true)]
    exact: bool,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
}

impl Global {
    fn verify(&self) -> Verify {
        Verify {
            sampling: SampleConfig {
                trials: self.trials,
                bound: self.bound,
                seed: self.seed,
            },
            exact: self.exact,
        }
    }
}

#[derive(Args, Debug, Clone)]
struct RootArgs {
    /// Series of so(q): B for odd q, D for even q.
    #[arg(long = "type", value_parser = parse_series)]
    series: Series,
    #[arg(long)]
    n: usize,
    /// Simple roots outside the Levi factor, e.g. `1,3` or `1,5-`.
    #[arg(long, default_value = "", allow_hyphen_values = true)]
    set: String,
}

impl RootArgs {
    fn subset(&self) -> Result<RootSubset, Error> {
        RootSubset::parse(self.series, self.n, &self.set)
    }
}

#[derive(Args, Debug, Clone)]
struct AlgebraSource {
    /// Example algebra by name (see `qred zoo`).
    #[arg(long)]
    zoo: Option<String>,
    /// Parameter of the example algebra.
    #[arg(long)]
    param: Option<usize>,
    /// so(q), or with --flag the parabolic of so(q) fixing a standard isotropic flag.
    #[arg(long)]
    q: Option<usize>,
    #[arg(long, value_delimiter = ',')]
    flag: Option<Vec<usize>>,
    /// sp(2n), given the size 2n.
    #[arg(long)]
    sp: Option<usize>,
    #[arg(long)]
    gl: Option<usize>,
    /// Series of a standard parabolic, with --n and --set.
    #[arg(long = "type", value_parser = parse_series)]
    series: Option<Series>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, allow_hyphen_values = true)]
    set: Option<String>,
    /// Algebra in the JSON exchange format.
    #[arg(long)]
    json: Option<String>,
}

impl AlgebraSource {
    fn build(&self) -> Result<(String, LieAlgebra), Error> {
        if let Some(name) = &self.zoo {
            let label = match self.param {
                Some(p) => format!("{name}({p})"),
                None => name.clone(),
            };
            return Ok((label, zoo(name, self.param)?));
        }
        if let Some(series) = self.series {
            let n = self.n.ok_or_else(|| Error::Parse("--type needs --n".into()))?;
            let roots = RootSubset::parse(series, n, self.set.as_deref().unwrap_or(""))?;
            let (_, alg) = parabolic_from_roots(&roots)?;
            return Ok((format!("p_I of so({}), {series}{n} I = {roots}", roots.q()), alg));
        }
        if let Some(q) = self.q {
            return match &self.flag {
                Some(dims) => {
                    let flag = Flag::standard(q, dims)?;
                    Ok((format!("p of so({q}) for flag {}", flag.profile()), parabolic_so(q, &flag)?))
                }
                None => Ok((format!("so({q})"), so_algebra(q)?)),
            };
        }
        if let Some(m) = self.sp {
            return Ok((format!("sp({m})"), sp_algebra(m)?));
        }
        if let Some(n) = self.gl {
            return Ok((format!("gl({n})"), gl_algebra(n)?));
        }
        if let Some(path) = &self.json {
            let text = fs::read_to_string(path).map_err(|e| Error::Parse(format!("{path}: {e}")))?;
            let alg = LieAlgebra::from_json(&text)?;
            // Without matrices the adjoint representation serves when it is faithful.
            let alg = if alg.realization().is_none() && alg.center().dim() == 0 {
                alg.with_adjoint_realization()?
            } else {
                alg
            };
            return Ok((path.clone(), alg));
        }
        Err(Error::Parse(
            "choose an algebra: --zoo, --type/--n/--set, --q [--flag], --sp, --gl or --json".into(),
        ))
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Quasi-reductivity of a standard parabolic of so(q) from its root set.
    Classify {
        #[command(flatten)]
        roots: RootArgs,
        /// Also compute the answer from the matrices.
        #[arg(long)]
        oracle: bool,
    },
    /// Index, Cartan-Duflo rank, defect and verdict of one algebra.
    Index {
        #[command(flatten)]
        source: AlgebraSource,
    },
    /// All standard parabolics of so(q) with formula values.
    Enumerate {
        #[arg(long, required_unless_present = "q_min")]
        q: Option<usize>,
        #[arg(long, requires = "q_max")]
        q_min: Option<usize>,
        #[arg(long)]
        q_max: Option<usize>,
        /// Fill the oracle columns.
        #[arg(long)]
        verify: bool,
    },
    /// Formula-versus-oracle checks; exit 1 on any disagreement.
    Verify {
        #[arg(long, default_value_t = 7)]
        q_min: usize,
        #[arg(long, default_value_t = 10)]
        q_max: usize,
        /// Largest dim V in the alternating-form flag census.
        #[arg(long, default_value_t = 6)]
        flag_max: usize,
    },
    /// List the example algebras, or analyze one.
    Zoo {
        name: Option<String>,
        #[arg(long)]
        param: Option<usize>,
    },
    /// The polynomial Psi: Pfaffian of the Kirillov form off the center.
    Psi {
        #[command(flatten)]
        source: AlgebraSource,
    },
    /// Formula and oracle for one flag: in so(q) with --q, otherwise the
    /// stabilizer for a generic alternating form on V of dimension the last entry.
    Flag {
        #[arg(long, value_delimiter = ',', required = true)]
        flag: Vec<usize>,
        #[arg(long)]
        q: Option<usize>,
    },
}

fn parse_series(s: &str) -> Result<Series, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// Exit status: success, formula/oracle disagreement, or bad input.
enum Outcome {
    Ok,
    Disagreement,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::Disagreement) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Result<Outcome, Error> {
    let g = &cli.global;
    match &cli.command {
        Command::Classify { roots, oracle } => classify(g, &roots.subset()?, *oracle),
        Command::Index { source } => {
            let (label, alg) = source.build()?;
            index(g, &label, &alg)
        }
        Command::Enumerate { q, q_min, q_max, verify } => {
            let qs: Vec<usize> = match (q, q_min, q_max) {
                (Some(q), _, _) => vec![*q],
                (None, Some(a), Some(b)) => (*a..=*b).collect(),
                _ => return Err(Error::Parse("give --q or --q-min/--q-max".into())),
            };
            let v = g.verify();
            let mut rows = Vec::new();
            for q in qs {
                rows.extend(enumerate(q, verify.then_some(&v))?);
            }
            print_rows(g.format, &rows);
            Ok(if CensusSummary::of(&rows).ok() {
                Outcome::Ok
            } else {
                Outcome::Disagreement
            })
        }
        Command::Verify {
            q_min,
            q_max,
            flag_max,
        } => verify(g, *q_min, *q_max, *flag_max),
        Command::Zoo { name, param } => match name {
            None => {
                let mut t = Table::new(&["name", "parameter", "dim"]);
                for (n, p) in ZOO_NAMES {
                    let alg = zoo(n, p.map(|_| 1))?;
                    t.push(vec![json!(n), json!(p.unwrap_or("-")), json!(alg.dim())]);
                }
                t.print(g.format);
                Ok(Outcome::Ok)
            }
            Some(n) => {
                let alg = zoo(n, *param)?;
                index(g, n, &alg)
            }
        },
        Command::Psi { source } => {
            let (label, alg) = source.build()?;
            let psi = alg.psi_polynomial()?;
            let mut t = Table::new(&["algebra", "dim", "psi", "degree"]);
            t.push(vec![json!(label), json!(alg.dim()), json!(psi.to_string()), json!(psi.total_degree())]);
            if g.format == Format::Text {
                println!("{psi}");
            } else {
                t.print(g.format);
            }
            Ok(Outcome::Ok)
        }
        Command::Flag { flag, q } => flag_cmd(g, flag, *q),
    }
}

fn verdict(qr: bool) -> &'static str {
    if qr {
        "quasi-reductive"
    } else {
        "non-quasi-reductive"
    }
}

fn report_json(r: &AnalysisReport, dim: usize) -> Value {
    let mut v = r.to_json();
    v["dim"] = json!(dim);
    v["bound"] = json!(r.sampling.bound);
    v["realization_dependent"] = json!(r.realization_dependent);
    v
}

fn classify(g: &Global, roots: &RootSubset, oracle: bool) -> Result<Outcome, Error> {
    let q = roots.q();
    let flag = roots.flag_profile();
    let index = index_p_formula(q, &flag)?;
    let defect = defect_p_formula(q, &flag)?;
    let qr = qr_p_formula(q, &flag)?;
    let classifier = qr_roots(roots)?;
    let prime = flag_prime(&flag, PrimeRule::Orthogonal { q });
    let izero = (roots.series == Series::D).then(|| i_zero(roots));
    let computed = if oracle {
        let (_, alg) = parabolic_from_roots(roots)?;
        Some((alg.dim(), g.verify().run(&alg)?))
    } else {
        None
    };
    let agree = computed
        .as_ref()
        .map_or(true, |(_, r)| r.index == index && r.defect == defect && r.quasi_reductive == qr)
        && classifier == qr;
    if g.format == Format::Text {
        println!("so({q}), {}{} I = {roots}", roots.series, roots.n);
        println!("{}", render_dynkin(roots));
        let mut line = format!("flag {flag}, V' = {prime}");
        if let Some(iz) = &izero {
            let s: Vec<String> = iz.iter().map(ToString::to_string).collect();
            line.push_str(&format!(", I0 = {{{}}}", s.join(",")));
        }
        println!("{line}");
        println!("{}, index {index}, defect {defect}", verdict(qr));
        if classifier != qr {
            println!("WARNING: Dynkin classifier says {}", verdict(classifier));
        }
        if let Some((dim, r)) = &computed {
            println!(
                "oracle: dim {dim}, index {}, rank {}, defect {}, {} (seed {}, {} trials, failure bound {})",
                r.index,
                r.rank_cd,
                r.defect,
                verdict(r.quasi_reductive),
                r.sampling.seed,
                r.sampling.trials,
                format_rat(&r.sampling.sz_bound)
            );
            if !agree {
                println!("DISAGREEMENT between formula and oracle");
            }
        }
    } else {
        let mut t = Table::new(&[
            "q",
            "series",
            "n",
            "root_set",
            "flag",
            "flag_prime",
            "i_zero",
            "index",
            "defect",
            "qr",
            "qr_classifier",
            "oracle",
        ]);
        t.push(vec![
            json!(q),
            json!(roots.series.to_string()),
            json!(roots.n),
            json!(roots.to_string()),
            json!(flag.dims()),
            json!(prime.dims()),
            json!(izero.map(|s| s.into_iter().collect::<Vec<_>>())),
            json!(index),
            json!(defect),
            json!(qr),
            json!(classifier),
            computed.as_ref().map_or(Value::Null, |(d, r)| report_json(r, *d)),
        ]);
        t.print(g.format);
    }
    Ok(if agree { Outcome::Ok } else { Outcome::Disagreement })
}

fn index(g: &Global, label: &str, alg: &LieAlgebra) -> Result<Outcome, Error> {
    let r = g.verify().run(alg)?;
    if g.format == Format::Text {
        println!("{label}: dim {}", alg.dim());
        println!(
            "index {}, rank {}, defect {}, unipotent center {}",
            r.index, r.rank_cd, r.defect, r.dim_uz
        );
        println!("{}", verdict(r.quasi_reductive));
        println!(
            "seed {}, {} trials, bound {}, failure bound {}{}",
            r.sampling.seed,
            r.sampling.trials,
            r.sampling.bound,
            format_rat(&r.sampling.sz_bound),
            if g.exact { " (index confirmed exactly)" } else { "" }
        );
        if r.realization_dependent {
            println!("note: the realization is not closed under Jordan parts; verdicts depend on it");
        }
    } else {
        let mut t = Table::new(&["algebra", "report"]);
        t.push(vec![json!(label), report_json(&r, alg.dim())]);
        t.print(g.format);
    }
    Ok(Outcome::Ok)
}

fn print_rows(format: Format, rows: &[EnumRow]) {
    let mut out = String::new();
    match format {
        Format::Csv => {
            out.push_str(EnumRow::CSV_HEADER);
            out.push('\n');
            for r in rows {
                out.push_str(&r.to_csv());
                out.push('\n');
            }
        }
        Format::Json => {
            for r in rows {
                out.push_str(&r.to_json().to_string());
                out.push('\n');
            }
        }
        Format::Md | Format::Text => {
            out.push_str(EnumRow::MD_HEADER);
            out.push('\n');
            for r in rows {
                out.push_str(&r.to_markdown());
                out.push('\n');
            }
        }
    }
    output::emit(&out);
}

fn flag_cmd(g: &Global, dims: &[usize], q: Option<usize>) -> Result<Outcome, Error> {
    let profile = FlagProfile::new(dims.to_vec())?;
    let v = g.verify();
    let (label, index_f, defect_f, r, dim) = match q {
        Some(q) => {
            let flag = Flag::standard(q, dims)?;
            let alg = parabolic_so(q, &flag)?;
            let r = v.run(&alg)?;
            (
                format!("p of so({q}) for flag {profile}"),
                index_p_formula(q, &profile)?,
                defect_p_formula(q, &profile)?,
                r,
                alg.dim(),
            )
        }
        None => {
            let row = flag_row(&profile, &v)?;
            let flag = Flag::standard(profile.top(), dims)?;
            let (xi, _) = qred::classical::generic_alternating_form(&flag);
            let alg = qred::classical::flag_stabilizer_sp(&flag, &xi)?;
            let r = v.run(&alg)?;
            (
                format!("r for flag {profile} in dim V = {}", profile.top()),
                row.index_formula,
                row.defect_formula,
                r,
                alg.dim(),
            )
        }
    };
    let agree = r.index == index_f && r.defect == defect_f;
    if g.format == Format::Text {
        println!("{label}: dim {dim}");
        println!("formula: index {index_f}, defect {defect_f}");
        println!(
            "oracle:  index {}, defect {}, rank {}, {}",
            r.index,
            r.defect,
            r.rank_cd,
            verdict(r.quasi_reductive)
        );
        println!("{}", if agree { "agree" } else { "DISAGREE" });
    } else {
        let mut t = Table::new(&["algebra", "index_formula", "defect_formula", "oracle", "agree"]);
        t.push(vec![json!(label), json!(index_f), json!(defect_f), report_json(&r, dim), json!(agree)]);
        t.print(g.format);
    }
    Ok(if agree { Outcome::Ok } else { Outcome::Disagreement })
}

fn verify(g: &Global, q_min: usize, q_max: usize, flag_max: usize) -> Result<Outcome, Error> {
    let v = g.verify();
    let mut disagreements = 0;
    let mut ambiguity = 0;
    for q in q_min..=q_max {
        let rows = enumerate(q, Some(&v))?;
        let s = CensusSummary::of(&rows);
        println!(
            "census so({q}): {} parabolics, {} disagreements, {} inconsistent formulas",
            s.rows, s.disagreements, s.inconsistent_formulas
        );
        for r in rows.iter().filter(|r| r.ambiguity || r.agree() != Some(true) || !r.formulas_consistent()) {
            let tag = if r.ambiguity { "ambiguity" } else { "DISAGREEMENT" };
            println!("  {tag}: {}", r.to_markdown());
        }
        disagreements += s.disagreements + s.inconsistent_formulas;
        ambiguity += s.ambiguity_rows;
    }
    for d in 1..=flag_max {
        let rows = flag_census(d, &v)?;
        let bad: Vec<_> = rows.iter().filter(|r| !r.agree()).collect();
        println!("flag census dim V = {d}: {} profiles, {} disagreements", rows.len(), bad.len());
        for r in &bad {
            println!(
                "  DISAGREEMENT {}: formula {}/{}, oracle {}/{}",
                r.profile, r.index_formula, r.defect_formula, r.oracle.index, r.oracle.defect
            );
        }
        disagreements += bad.len();
    }
    println!(
        "{disagreements} disagreements, {ambiguity} ambiguity row{} logged",
        if ambiguity == 1 { "" } else { "s" }
    );
    Ok(if disagreements == 0 {
        Outcome::Ok
    } else {
        Outcome::Disagreement
    })
}
