mod diagram;

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use lefschetz::chains::{self, ClassT};
use lefschetz::invariants::{self, ClassMap};
use lefschetz::palf::{self, FillingResult, PalfDescription, PalfWord};
use lefschetz::plumbing::{self, PlumbingGraph};
use lefschetz::relations::{self, SubstitutionCertificate};
use lefschetz::{par, text, Error};

#[derive(Parser)]
#[command(name = "lefschetz", version, about = "Lefschetz fibrations on resolutions and fillings of quotient surface singularities")]
struct Cli {
    /// Number of graph blow-ups allowed when searching for P-resolutions.
    #[arg(long, global = true, default_value_t = 0)]
    budget: usize,
    /// Also write every produced artifact into this directory.
    #[arg(long, global = true)]
    out_dir: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    /// SVG pictures of the pages and vanishing cycles
    Diagram,
}

#[derive(Subcommand)]
enum Cmd {
    /// Hirzebruch-Jung continued fractions and class T chains.
    #[command(subcommand)]
    Chains(ChainsCmd),
    /// Tuples parametrizing the fillings of a cyclic quotient.
    #[command(subcommand)]
    Lisca(LiscaCmd),
    /// Plumbing graphs and P-resolutions.
    #[command(subcommand)]
    Plumbing(PlumbingCmd),
    /// Monodromy factorizations.
    #[command(subcommand)]
    Palf(PalfCmd),
    /// Re-verify a certificate file.
    Certify { file: PathBuf },
    /// Euler characteristic, first homology and adjunction verdicts.
    Invariants {
        file: PathBuf,
        /// Graph whose vertices the class map refers to.
        #[arg(long, requires = "classes")]
        graph: Option<PathBuf>,
        /// Lines `class <vertex> <pos>:<mult> ...` (a leading `#` is allowed).
        #[arg(long, requires = "graph")]
        classes: Option<PathBuf>,
    },
    /// Singularity in, certified filling factorizations out.
    #[command(subcommand)]
    Pipeline(Singularity),
    /// Built-in substitution relations.
    #[command(subcommand)]
    Relations(RelationsCmd),
}

#[derive(Subcommand)]
enum ChainsCmd {
    /// Value of a chain such as `[5,2]`.
    Eval { chain: String },
    /// Chain of `n/q`.
    Expand { n: i64, q: i64 },
    /// Class T recognition.
    Classt { chain: String },
}

#[derive(Subcommand)]
enum LiscaCmd {
    /// Members of the bounded tuple set for `n/q`, with a blow-up sequence.
    Enum {
        n: i64,
        q: i64,
        /// Also build each filling word and report its invariants.
        #[arg(long)]
        palf: bool,
    },
}

#[derive(Subcommand, Clone)]
enum Singularity {
    /// Cyclic quotient `1/n (1, q)`.
    Cyclic { n: i64, q: i64 },
    /// Dihedral star with arms `(2)`, `(2)` and the chain of `n/q`.
    Dihedral { n: i64, q: i64 },
    /// Star with central `-b` and three arms given as chains.
    Star {
        b: i64,
        arm1: String,
        arm2: String,
        arm3: String,
    },
    /// A graph file.
    Graph { file: PathBuf },
}

#[derive(Subcommand)]
enum PlumbingCmd {
    /// Print the minimal resolution graph.
    #[command(subcommand)]
    Build(Singularity),
    /// Check the decorations of a P-resolution file.
    Validate { file: PathBuf },
    /// All P-resolutions within the blow-up budget.
    EnumPres { file: PathBuf },
    /// Euler characteristic, first homology and inertia of the plumbing.
    Invariants { file: PathBuf },
}

#[derive(Subcommand)]
enum PalfCmd {
    /// Factorization on the minimal resolution.
    Minres { graph: PathBuf },
    /// Factorization on the smoothing of a P-resolution.
    Filling { graph: PathBuf, pres: PathBuf },
    /// Factorization on the filling of `1/n (1, q)` given by a tuple.
    Bo { n: i64, q: i64, tuple: String },
}

#[derive(Subcommand)]
enum RelationsCmd {
    /// Built-in relations with their verdicts.
    List,
    /// One relation as a certificate file: `lantern`, `daisy <p>` or `rbd <chain>`.
    Show { name: String, arg: Option<String> },
}

/// How a command ended, beyond hard errors.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
enum Status {
    Ok,
    Unsupported,
    CertificateFailed,
}

impl Status {
    fn code(self) -> u8 {
        match self {
            Status::Ok => 0,
            Status::CertificateFailed => 2,
            Status::Unsupported => 3,
        }
    }
}

struct Ctx {
    budget: usize,
    out_dir: Option<PathBuf>,
    format: Format,
    out: String,
}

impl Ctx {
    fn line(&mut self, s: impl AsRef<str>) {
        self.out.push_str(s.as_ref());
        self.out.push('\n');
    }

    fn save(&self, name: &str, content: &str) -> Result<(), Error> {
        if let Some(dir) = &self.out_dir {
            fs::create_dir_all(dir).map_err(io_err)?;
            fs::write(dir.join(name), content).map_err(io_err)?;
        }
        Ok(())
    }

    /// A word in the requested format, with labels and rotation numbers as
    /// comment lines so the text stays a valid factorization file.
    fn render(&self, pd: &PalfDescription) -> String {
        match self.format {
            Format::Diagram => diagram::svg(&pd.word),
            Format::Text => {
                let mut s = pd.word.to_string();
                for l in pd.label_sidecar().lines() {
                    let _ = writeln!(s, "# {l}");
                }
                for (v, combo) in &pd.vertex_classes {
                    let _ = writeln!(s, "# {}", class_line(*v, combo));
                }
                s
            }
        }
    }

    fn word_ext(&self) -> &'static str {
        match self.format {
            Format::Text => "fact",
            Format::Diagram => "svg",
        }
    }
}

fn io_err(e: std::io::Error) -> Error {
    Error::Parse(format!("io: {e}"))
}

fn read(p: &Path) -> Result<String, Error> {
    fs::read_to_string(p).map_err(|e| Error::Parse(format!("{}: {e}", p.display())))
}

fn read_graph(p: &Path) -> Result<PlumbingGraph, Error> {
    PlumbingGraph::parse(&read(p)?)
}

fn class_line(v: usize, combo: &[(usize, i64)]) -> String {
    let terms: Vec<String> = combo.iter().map(|(p, m)| format!("{p}:{m}")).collect();
    format!("class {v} {}", terms.join(" "))
}

fn parse_classes(text: &str) -> Result<ClassMap, Error> {
    let mut map = ClassMap::new();
    for raw in text.lines() {
        let line = raw.trim().trim_start_matches('#').trim();
        let mut toks = line.split_whitespace();
        if toks.next() != Some("class") {
            continue;
        }
        let bad = || Error::Parse(format!("bad class line {raw:?}"));
        let v: usize = toks.next().ok_or_else(bad)?.parse().map_err(|_| bad())?;
        let mut combo = Vec::new();
        for t in toks {
            let (p, m) = t.split_once(':').ok_or_else(bad)?;
            combo.push((p.parse().map_err(|_| bad())?, m.parse().map_err(|_| bad())?));
        }
        map.insert(v, combo);
    }
    Ok(map)
}

/// File-name friendly form of a certificate name.
fn slug(s: &str) -> String {
    let mut out = String::new();
    for ch in s.chars() {
        if ch.is_ascii_alphanumeric() {
            out.push(ch);
        } else if !out.ends_with('_') {
            out.push('_');
        }
    }
    out.trim_matches('_').to_string()
}

fn build(sing: &Singularity) -> Result<PlumbingGraph, Error> {
    match sing {
        Singularity::Cyclic { n, q } => plumbing::build_cyclic(*n, *q),
        Singularity::Dihedral { n, q } => plumbing::build_dihedral(*n, *q),
        Singularity::Star { b, arm1, arm2, arm3 } => plumbing::build_star(
            *b,
            &chains::parse_chain(arm1)?,
            &chains::parse_chain(arm2)?,
            &chains::parse_chain(arm3)?,
        ),
        Singularity::Graph { file } => read_graph(file),
    }
}

fn describe(sing: &Singularity) -> String {
    match sing {
        Singularity::Cyclic { n, q } => format!("cyclic {n} {q}"),
        Singularity::Dihedral { n, q } => format!("dihedral {n} {q}"),
        Singularity::Star { b, arm1, arm2, arm3 } => format!("star {b} {arm1} {arm2} {arm3}"),
        Singularity::Graph { file } => format!("graph {}", file.display()),
    }
}

fn chains_cmd(ctx: &mut Ctx, cmd: &ChainsCmd) -> Result<Status, Error> {
    match cmd {
        ChainsCmd::Eval { chain } => {
            let c = chains::parse_chain(chain)?;
            ctx.line(chains::hj_eval(&c)?.to_string());
        }
        ChainsCmd::Expand { n, q } => ctx.line(chains::format_chain(&chains::hj_expand_frac(*n, *q)?)),
        ChainsCmd::Classt { chain } => {
            let c = chains::parse_chain(chain)?;
            match chains::is_class_t(&c) {
                ClassT::RationalDoublePoint => ctx.line("rational double point"),
                ClassT::Wahl { d, n, a, base, steps } => {
                    let s: Vec<String> = steps.iter().map(|s| format!("{s:?}")).collect();
                    ctx.line(format!(
                        "class T d {d} n {n} a {a} base {} steps {}",
                        chains::format_chain(&base),
                        if s.is_empty() { "none".into() } else { s.join(" ") }
                    ));
                }
                ClassT::No => ctx.line("not class T"),
            }
        }
    }
    Ok(Status::Ok)
}

fn lisca_cmd(ctx: &mut Ctx, cmd: &LiscaCmd) -> Result<Status, Error> {
    let LiscaCmd::Enum { n, q, palf } = cmd;
    let (bound, set) = chains::enumerate_z_bounded(*n, *q)?;
    ctx.line(format!("bound {}", chains::format_chain(&bound)));
    ctx.line(format!("members {}", set.len()));
    let items: Vec<(&Vec<i64>, &Vec<chains::BlowPos>)> = set.iter().collect();
    let rows = par::map(&items, |(t, tr)| -> Result<String, Error> {
        let trace: Vec<String> = tr.iter().map(|p| p.to_string()).collect();
        let mut row = format!("{} trace {}", chains::format_tuple(t), if trace.is_empty() { "-".into() } else { trace.join(" ") });
        if *palf {
            let pd = palf::bo_palf(*n, *q, t, tr)?;
            row.push_str(&format!(" twists {} chi {} h1 {}", pd.len(), pd.euler_char(), pd.first_homology()?));
        }
        Ok(row)
    });
    for r in rows {
        ctx.line(r?);
    }
    Ok(Status::Ok)
}

fn plumbing_cmd(ctx: &mut Ctx, cmd: &PlumbingCmd) -> Result<Status, Error> {
    match cmd {
        PlumbingCmd::Build(sing) => {
            let g = build(sing)?;
            ctx.save("graph.txt", &g.to_string())?;
            ctx.out.push_str(&g.to_string());
        }
        PlumbingCmd::Validate { file } => {
            let v = plumbing::validate_p_resolution(&read_graph(file)?);
            ctx.line(if v.ok { "valid" } else { "invalid" });
            for d in &v.diagnostics {
                ctx.line(format!("  {d}"));
            }
            if !v.ok {
                return Err(Error::Domain("not a P-resolution".into()));
            }
        }
        PlumbingCmd::EnumPres { file } => {
            let g = read_graph(file)?;
            let e = plumbing::enumerate_p_resolutions(&g, ctx.budget);
            ctx.line(format!("p-resolutions {} budget {} partial {}", e.results.len(), e.budget, e.partial));
            for (i, y) in e.results.iter().enumerate() {
                ctx.line(format!("# p-resolution {}", i + 1));
                ctx.out.push_str(&y.to_string());
                ctx.save(&format!("pres-{}.txt", i + 1), &y.to_string())?;
            }
        }
        PlumbingCmd::Invariants { file } => {
            let g = read_graph(file)?;
            let inv = plumbing::plumbing_invariants(&g);
            let (p, n, z) = inv.signature;
            ctx.line(format!("chi {}", inv.euler_char));
            ctx.line(format!("h1 {}", inv.h1));
            ctx.line(format!("inertia + {p} - {n} 0 {z}"));
            ctx.line(format!("negative definite {}", g.is_negative_definite()));
            let bad = plumbing::has_bad_vertex(&g);
            ctx.line(format!("bad vertex {}", bad.map_or("none".into(), |v| v.to_string())));
        }
    }
    Ok(Status::Ok)
}

fn emit_word(ctx: &mut Ctx, stem: &str, pd: &PalfDescription) -> Result<(), Error> {
    let r = ctx.render(pd);
    ctx.save(&format!("{stem}.{}", ctx.word_ext()), &r)?;
    ctx.out.push_str(&r);
    Ok(())
}

fn cert_status(certs: &[SubstitutionCertificate]) -> Status {
    if certs.iter().all(SubstitutionCertificate::is_valid) {
        Status::Ok
    } else {
        Status::CertificateFailed
    }
}

fn palf_cmd(ctx: &mut Ctx, cmd: &PalfCmd) -> Result<Status, Error> {
    match cmd {
        PalfCmd::Minres { graph } => {
            let g = read_graph(graph)?;
            let pd = palf::minres_palf(&g)?;
            emit_word(ctx, "minres", &pd)?;
            Ok(Status::Ok)
        }
        PalfCmd::Filling { graph, pres } => {
            let g = read_graph(graph)?;
            let y = read_graph(pres)?;
            let r = palf::filling_palf(&g, &y)?;
            emit_word(ctx, "filling", &r.palf)?;
            for c in &r.certificates {
                ctx.save(&format!("{}.cert", slug(&c.name)), &c.to_text())?;
                if ctx.format == Format::Text {
                    ctx.line(format!("# certificate {} valid {}", c.name, c.is_valid()));
                }
            }
            Ok(cert_status(&r.certificates))
        }
        PalfCmd::Bo { n, q, tuple } => {
            let t = chains::parse_chain(tuple)?;
            let (_, set) = chains::enumerate_z_bounded(*n, *q)?;
            let trace = set
                .get(&t)
                .ok_or_else(|| Error::Domain(format!("{} is not a member for {n}/{q}", chains::format_tuple(&t))))?;
            let pd = palf::bo_palf(*n, *q, &t, trace)?;
            emit_word(ctx, "bo", &pd)?;
            Ok(Status::Ok)
        }
    }
}

fn certify_cmd(ctx: &mut Ctx, file: &Path) -> Result<Status, Error> {
    let c = SubstitutionCertificate::parse(&read(file)?)?;
    ctx.out.push_str(&c.transcript());
    match c.verify() {
        Ok(()) => {
            ctx.line(format!("certificate {} valid", c.name));
            Ok(Status::Ok)
        }
        Err(e) => {
            ctx.line(format!("certificate {} invalid: {e}", c.name));
            Ok(Status::CertificateFailed)
        }
    }
}

fn description_of(word: PalfWord) -> PalfDescription {
    let rotation: Vec<Option<i64>> = match &word {
        PalfWord::Planar(f) => vec![Some(invariants::planar_rotation_number()); f.len()],
        PalfWord::Genus1(f) => f.word.iter().map(|c| c.rotation).collect(),
    };
    PalfDescription {
        labels: Vec::new(),
        rotation,
        vertex_classes: BTreeMap::new(),
        word,
    }
}

fn invariants_cmd(ctx: &mut Ctx, file: &Path, graph: Option<&Path>, classes: Option<&Path>) -> Result<Status, Error> {
    let text_in = read(file)?;
    let pd = description_of(text::parse_word(&text_in)?);
    ctx.line(format!("genus {}", pd.word.genus()));
    ctx.line(format!("twists {}", pd.len()));
    ctx.line(format!("chi {}", pd.euler_char()));
    ctx.line(format!("h1 {}", pd.first_homology()?));
    if let (Some(gp), Some(cp)) = (graph, classes) {
        let g = read_graph(gp)?;
        let map = parse_classes(&read(cp)?)?;
        let verdicts = invariants::check_adjunction(&pd, &g, &map)?;
        let rot: Vec<i64> = pd.rotation.iter().map(|r| r.unwrap_or(0)).collect();
        for (v, ok) in verdicts {
            let lhs = invariants::chern_pairing(&rot, &map[&v]);
            ctx.line(format!("adjunction v{v} {lhs} = {} + 2 {ok}", g.degree(v)));
        }
    }
    Ok(Status::Ok)
}

fn relations_cmd(ctx: &mut Ctx, cmd: &RelationsCmd) -> Result<Status, Error> {
    match cmd {
        RelationsCmd::List => {
            let all = relations::list()?;
            for c in &all {
                let chain = c.chain.as_deref().map_or("-".into(), chains::format_chain);
                ctx.line(format!(
                    "{} chain {} holes {} lhs {} rhs {} delta-chi {} valid {}",
                    c.name,
                    chain,
                    c.lhs.ambient_holes(),
                    c.lhs.len(),
                    c.rhs.len(),
                    c.delta_chi(),
                    c.is_valid()
                ));
                ctx.save(&format!("{}.cert", slug(&c.name)), &c.to_text())?;
            }
            Ok(cert_status(&all))
        }
        RelationsCmd::Show { name, arg } => {
            let c = match (name.as_str(), arg) {
                ("lantern", None) => relations::lantern()?,
                ("daisy", Some(p)) => relations::daisy(p.parse().map_err(|_| Error::Parse(format!("bad p {p:?}")))?)?,
                ("rbd", Some(ch)) => relations::rbd_relation(&chains::parse_chain(ch)?)?,
                _ => return Err(Error::Parse(format!("unknown relation {name}"))),
            };
            ctx.save(&format!("{}.cert", slug(&c.name)), &c.to_text())?;
            match ctx.format {
                Format::Text => ctx.out.push_str(&c.to_text()),
                Format::Diagram => {
                    ctx.out.push_str(&diagram::svg(&c.lhs));
                    ctx.out.push_str(&diagram::svg(&c.rhs));
                }
            }
            Ok(cert_status(std::slice::from_ref(&c)))
        }
    }
}

trait Holes {
    fn ambient_holes(&self) -> usize;
}

impl Holes for PalfWord {
    fn ambient_holes(&self) -> usize {
        match self {
            PalfWord::Planar(f) => f.page.holes,
            PalfWord::Genus1(f) => f.page.page().holes,
        }
    }
}

fn pipeline(ctx: &mut Ctx, sing: &Singularity) -> Result<Status, Error> {
    let g = build(sing)?;
    let mut status = Status::Ok;
    ctx.line(format!("singularity {}", describe(sing)));
    ctx.line("graph");
    for l in g.to_string().lines() {
        ctx.line(format!("  {l}"));
    }
    ctx.save("graph.txt", &g.to_string())?;

    let plumb = plumbing::plumbing_invariants(&g);
    match palf::minres_palf(&g) {
        Ok(pd) => {
            let h1 = pd.first_homology()?;
            ctx.line(format!(
                "minimal resolution genus {} twists {} chi {} h1 {} plumbing chi {} h1 {} match {}",
                pd.word.genus(),
                pd.len(),
                pd.euler_char(),
                h1,
                plumb.euler_char,
                plumb.h1,
                pd.euler_char() == plumb.euler_char && h1 == plumb.h1
            ));
            if !pd.vertex_classes.is_empty() && pd.rotation.iter().all(Option::is_some) {
                let v = invariants::check_adjunction(&pd, &g, &pd.vertex_classes)?;
                let fails: Vec<String> = v.iter().filter(|(_, ok)| !**ok).map(|(v, _)| format!("v{v}")).collect();
                ctx.line(format!(
                    "  adjunction {}",
                    if fails.is_empty() { "holds at every vertex".into() } else { format!("fails at {}", fails.join(" ")) }
                ));
            }
            let r = ctx.render(&pd);
            ctx.save(&format!("minres.{}", ctx.word_ext()), &r)?;
        }
        Err(Error::Unsupported(m)) => {
            ctx.line(format!("minimal resolution unsupported: {m}"));
            status = status.max(Status::Unsupported);
        }
        Err(e) => return Err(e),
    }

    let e = plumbing::enumerate_p_resolutions(&g, ctx.budget);
    ctx.line(format!("p-resolutions {} budget {} partial {}", e.results.len(), e.budget, e.partial));
    let fills: Vec<Result<FillingResult, Error>> = par::map(&e.results, |y| palf::filling_palf(&g, y));
    for (i, (y, r)) in e.results.iter().zip(fills).enumerate() {
        let k = i + 1;
        let decs: Vec<String> = y.decorations.iter().map(|d| chains::format_chain(&y.chain_of(d))).collect();
        ctx.line(format!(
            "p-resolution {k} vertices {} decorations {}",
            y.vertices.len(),
            if decs.is_empty() { "none".into() } else { decs.join(" ") }
        ));
        ctx.save(&format!("pres-{k}.txt"), &y.to_string())?;
        match r {
            Ok(r) => {
                let h1 = r.palf.first_homology()?;
                ctx.line(format!(
                    "  filling {} genus {} twists {} chi {} expected {} h1 {}",
                    r.case,
                    r.palf.word.genus(),
                    r.palf.len(),
                    r.palf.euler_char(),
                    r.expected_euler,
                    h1
                ));
                let rendered = ctx.render(&r.palf);
                ctx.save(&format!("filling-{k}.{}", ctx.word_ext()), &rendered)?;
                for (j, c) in r.certificates.iter().enumerate() {
                    let ok = c.is_valid();
                    ctx.line(format!("  certificate {} delta-chi {} valid {ok}", c.name, c.delta_chi()));
                    ctx.save(&format!("filling-{k}-cert-{}-{}.cert", j + 1, slug(&c.name)), &c.to_text())?;
                    if !ok {
                        status = status.max(Status::CertificateFailed);
                    }
                }
                if r.palf.euler_char() != r.expected_euler {
                    ctx.line("  euler characteristic mismatch");
                    status = status.max(Status::CertificateFailed);
                }
            }
            Err(Error::Unsupported(m)) => {
                ctx.line(format!("  unsupported: {m}"));
                status = status.max(Status::Unsupported);
            }
            Err(Error::Certificate(m)) => {
                ctx.line(format!("  certificate failure: {m}"));
                status = status.max(Status::CertificateFailed);
            }
            Err(e) => {
                ctx.line(format!("  error: {e}"));
                status = status.max(Status::Unsupported);
            }
        }
    }
    ctx.save("report.txt", &ctx.out.clone())?;
    Ok(status)
}

fn run(cli: &Cli, ctx: &mut Ctx) -> Result<Status, Error> {
    match &cli.cmd {
        Cmd::Chains(c) => chains_cmd(ctx, c),
        Cmd::Lisca(c) => lisca_cmd(ctx, c),
        Cmd::Plumbing(c) => plumbing_cmd(ctx, c),
        Cmd::Palf(c) => palf_cmd(ctx, c),
        Cmd::Certify { file } => certify_cmd(ctx, file),
        Cmd::Invariants { file, graph, classes } => invariants_cmd(ctx, file, graph.as_deref(), classes.as_deref()),
        Cmd::Pipeline(sing) => pipeline(ctx, sing),
        Cmd::Relations(c) => relations_cmd(ctx, c),
    }
}

fn main() -> ExitCode {
    // clap exits with 2 on usage errors, which is taken by certificate failures
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let mut ctx = Ctx {
        budget: cli.budget,
        out_dir: cli.out_dir.clone(),
        format: cli.format,
        out: String::new(),
    };
    let result = run(&cli, &mut ctx);
    print!("{}", ctx.out);
    match result {
        Ok(s) => ExitCode::from(s.code()),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::Certificate(_) => Status::CertificateFailed.code(),
                Error::Unsupported(_) => Status::Unsupported.code(),
                _ => 1,
            })
        }
    }
}
