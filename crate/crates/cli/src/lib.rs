//! Command surface of the `atomspec` binary: requests, file loading, and the
//! JSON and text renderings of every result.

mod monomial;

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use atomspec::atoms::{
    atom_support_generators, fiber_classes, fiber_invariants, support_minimal_primes, AtomPoint,
};
use atomspec::filt::prime_filtration;
use atomspec::gring::{GradedRing, Monomial, MonomialPrime, PresentedModule};
use atomspec::io::{
    cox_from_record, cox_to_record, element_to_vec, fan_from_record, module_from_record, small, CoxRecord,
    ModuleRecord,
};
use atomspec::sample::{random_module, rng, ModuleShape};
use atomspec::sheafkern::{
    brute_force_loc_piece, enumerate_atoms, factor_in_loc_kernel, kernel_decomposition_check,
    main2_identity_report, module_in_loc_kernel, sheafifies_to_zero, sheafifies_to_zero_loc, technical_lemma_check,
    ZeroDecision, DEFAULT_PRIME_CAP,
};
use atomspec::toric::{cox_from_fan, irrelevant_ideal, CoxData};
use atomspec::zlin::QuotientInvariants;
use rayon::prelude::*;
use serde_json::{json, Value};

pub use monomial::{parse_monomial, ParseError};

pub const DEFAULT_COSET_WINDOW: u64 = 3;
pub const DEFAULT_K_MAX: u32 = 6;
pub const DEFAULT_SAMPLES: usize = 50;
pub const DEFAULT_DEGREE_CAP: u32 = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    CheckZero,
    Filtration,
    Asupp,
    Fiber,
    FiberClasses,
    Irrelevant,
    CoxFromFan,
    Verify,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Format {
    #[default]
    Json,
    Text,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Options {
    pub coset_window: u64,
    pub k_max: u32,
    pub samples: usize,
    pub seed: u64,
    /// Total-degree bound for the oracle when the grading is not pointed.
    pub degree_cap: u32,
    pub fiber_cap: usize,
    /// Variable names, comma separated (`fiber`).
    pub prime: Option<String>,
    /// Degree coordinates, comma separated (`fiber`).
    pub degree: Option<String>,
    /// Extra monomial to localize at (`check-zero`).
    pub localize: Option<String>,
    pub threads: Option<usize>,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            coset_window: DEFAULT_COSET_WINDOW,
            k_max: DEFAULT_K_MAX,
            samples: DEFAULT_SAMPLES,
            seed: 0,
            degree_cap: DEFAULT_DEGREE_CAP,
            fiber_cap: atomspec::atoms::DEFAULT_FIBER_CLASS_CAP,
            prime: None,
            degree: None,
            localize: None,
            threads: None,
        }
    }
}

/// The first input is always the Cox (or fan) file; module files follow.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommandRequest {
    pub command: Command,
    pub inputs: Vec<PathBuf>,
    pub options: Options,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{path}: {source}")]
    Json { path: String, source: serde_json::Error },
    #[error("{0}")]
    Parse(#[from] ParseError),
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] atomspec::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        use atomspec::Error as E;
        match self {
            CliError::Core(E::Unsupported(_) | E::NeedsBound | E::Resource(_)) => 3,
            CliError::Core(E::Invariant(_)) => 4,
            _ => 2,
        }
    }
}

/// A finished command: the record, its text rendering and the exit code.
#[derive(Clone, Debug, PartialEq)]
pub struct Response {
    pub record: Value,
    pub text: String,
    pub exit_code: i32,
}

impl Response {
    fn ok(record: Value, text: String) -> Self {
        Response { record, text, exit_code: 0 }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => serde_json::to_string_pretty(&self.record).expect("values serialize"),
            Format::Text => self.text.clone(),
        }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn parse_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    serde_json::from_str(&read(path)?).map_err(|source| CliError::Json {
        path: path.display().to_string(),
        source,
    })
}

pub fn load_cox(path: &Path) -> Result<CoxData, CliError> {
    Ok(cox_from_record(&parse_json::<CoxRecord>(path)?)?)
}

pub fn load_module(ring: &Arc<GradedRing>, path: &Path) -> Result<PresentedModule, CliError> {
    Ok(module_from_record(ring.clone(), &parse_json::<ModuleRecord>(path)?)?)
}

fn input(req: &CommandRequest, k: usize, what: &str) -> Result<PathBuf, CliError> {
    req.inputs
        .get(k)
        .cloned()
        .ok_or_else(|| CliError::Usage(format!("missing {what} file")))
}

fn pool(threads: Option<usize>) -> Result<rayon::ThreadPool, CliError> {
    let mut b = rayon::ThreadPoolBuilder::new();
    if let Some(n) = threads {
        b = b.num_threads(n.max(1));
    }
    b.build().map_err(|e| CliError::Usage(format!("thread pool: {e}")))
}

pub fn monomial_text(ring: &GradedRing, m: &Monomial) -> String {
    let parts: Vec<String> = m
        .exponents()
        .iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(i, &e)| {
            if e == 1 {
                ring.names()[i].clone()
            } else {
                format!("{}^{e}", ring.names()[i])
            }
        })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

fn prime_text(ring: &GradedRing, p: &MonomialPrime) -> String {
    let names: Vec<&str> = p.indices().into_iter().map(|i| ring.names()[i].as_str()).collect();
    format!("<{}>", names.join(", "))
}

fn coords(g: &atomspec::GroupElement) -> Result<Vec<i64>, CliError> {
    Ok(element_to_vec(g)?)
}

fn invariants_record(q: &QuotientInvariants) -> Result<Value, CliError> {
    Ok(json!({"free_rank": q.free_rank, "torsion": small(&q.torsion)?}))
}

fn invariants_text(q: &QuotientInvariants) -> String {
    let mut parts: Vec<String> = Vec::new();
    match q.free_rank {
        0 => {}
        1 => parts.push("Z".into()),
        r => parts.push(format!("Z^{r}")),
    }
    parts.extend(q.torsion.iter().map(|t| format!("Z/{t}")));
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

fn atom_record(a: &AtomPoint) -> Result<Value, CliError> {
    Ok(json!({"prime": a.prime().indices(), "rep": coords(a.rep())?, "standard": a.is_standard()}))
}

pub fn run(req: &CommandRequest) -> Result<Response, CliError> {
    match req.command {
        Command::CheckZero => check_zero(req),
        Command::Filtration => filtration(req),
        Command::Asupp => asupp(req),
        Command::Fiber => fiber(req),
        Command::FiberClasses => classes(req),
        Command::Irrelevant => irrelevant(req),
        Command::CoxFromFan => from_fan(req),
        Command::Verify => verify(req),
    }
}

fn decision_record(d: &ZeroDecision, loc: bool) -> Result<Value, CliError> {
    let factors = d
        .factors
        .iter()
        .map(|f| Ok(json!({"prime": f.prime.indices(), "twist": coords(&f.twist)?, "reason": f.reason.as_str()})))
        .collect::<Result<Vec<_>, CliError>>()?;
    Ok(json!({
        "zero": d.verdict,
        "factors": factors,
        "routes": {"filtration": d.verdict, "localization": loc},
        "agree": d.verdict == loc,
    }))
}

/// Both route verdicts and the optional extra localization.
type Evaluated = (ZeroDecision, bool, Option<bool>);

fn check_zero(req: &CommandRequest) -> Result<Response, CliError> {
    let c = load_cox(&input(req, 0, "Cox")?)?;
    let ring = c.ring().clone();
    if req.inputs.len() < 2 {
        return Err(CliError::Usage("check-zero needs at least one module file".into()));
    }
    let localize = req
        .options
        .localize
        .as_deref()
        .map(|t| parse_monomial(&ring, t))
        .transpose()?;
    let modules = req.inputs[1..]
        .iter()
        .map(|p| load_module(&ring, p))
        .collect::<Result<Vec<_>, _>>()?;
    let evaluated: Vec<atomspec::Result<Evaluated>> = pool(req.options.threads)?
        .install(|| {
            modules
                .par_iter()
                .map(|m| {
                    let d = sheafifies_to_zero(&c, m)?;
                    let loc = sheafifies_to_zero_loc(&c, m)?;
                    let at = localize.as_ref().map(|f| module_in_loc_kernel(&ring, f, m)).transpose()?;
                    Ok((d, loc, at))
                })
                .collect()
        });
    let mut records = Vec::new();
    let mut text = String::new();
    let mut agree = true;
    for (path, e) in req.inputs[1..].iter().zip(evaluated) {
        let (d, loc, at) = e?;
        agree &= d.verdict == loc;
        let mut r = decision_record(&d, loc)?;
        let _ = writeln!(text, "{}: zero = {}", path.display(), d.verdict);
        for f in &d.factors {
            let _ = writeln!(
                text,
                "  S/{}({}) {}",
                prime_text(&ring, &f.prime),
                coords(&f.twist)?.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", "),
                f.reason.as_str()
            );
        }
        let _ = writeln!(text, "  routes: filtration {}, localization {}", d.verdict, loc);
        if let (Some(f), Some(at)) = (&localize, at) {
            r["localization"] = json!({"at": monomial_text(&ring, f), "zero": at});
            let _ = writeln!(text, "  degree-zero part at {}: zero = {at}", monomial_text(&ring, f));
        }
        records.push(r);
    }
    let record = if records.len() == 1 { records.pop().expect("one record") } else { Value::Array(records) };
    let exit_code = if agree { 0 } else { 4 };
    if !agree {
        text.push_str("route disagreement: internal invariant violated\n");
    }
    Ok(Response { record, text, exit_code })
}

fn cox_and_module(req: &CommandRequest) -> Result<(CoxData, PresentedModule), CliError> {
    let c = load_cox(&input(req, 0, "Cox")?)?;
    let m = load_module(c.ring(), &input(req, 1, "module")?)?;
    Ok((c, m))
}

fn filtration(req: &CommandRequest) -> Result<Response, CliError> {
    let (c, m) = cox_and_module(req)?;
    let ring = c.ring();
    let f = prime_filtration(&m)?;
    let mut factors = Vec::new();
    let mut text = String::new();
    for factor in f.factors() {
        let t = coords(&factor.twist)?;
        factors.push(json!({"prime": factor.prime.indices(), "twist": t}));
        let _ = writeln!(text, "S/{}({:?})", prime_text(ring, &factor.prime), t);
    }
    Ok(Response::ok(json!({ "factors": factors }), text))
}

fn asupp(req: &CommandRequest) -> Result<Response, CliError> {
    let (c, m) = cox_and_module(req)?;
    let ring = c.ring();
    let atoms = atom_support_generators(&m)?;
    let minimal = support_minimal_primes(&m)?;
    let mut text = String::new();
    for a in &atoms {
        let kind = if a.is_standard() { "standard" } else { "non-standard" };
        let _ = writeln!(text, "{}~{:?} {kind}", prime_text(ring, &a.prime()), coords(a.rep())?);
    }
    let _ = writeln!(
        text,
        "minimal primes: {}",
        minimal.iter().map(|p| prime_text(ring, p)).collect::<Vec<_>>().join(" ")
    );
    Ok(Response::ok(
        json!({
            "atoms": atoms.iter().map(atom_record).collect::<Result<Vec<_>, _>>()?,
            "minimal_primes": minimal.iter().map(|p| p.indices()).collect::<Vec<_>>(),
        }),
        text,
    ))
}

fn parse_prime(ring: &GradedRing, text: &str) -> Result<MonomialPrime, CliError> {
    let mut idx = Vec::new();
    let mut offset = 0;
    for part in text.split(',') {
        let name = part.trim();
        if !name.is_empty() {
            let at = offset + part.find(name).unwrap_or(0);
            idx.push(ring.var_index(name).ok_or_else(|| ParseError {
                position: at,
                message: format!("unknown variable {name:?}"),
            })?);
        }
        offset += part.len() + 1;
    }
    Ok(MonomialPrime::from_indices(ring.nvars(), &idx)?)
}

fn parse_degree(ring: &GradedRing, text: &str) -> Result<atomspec::GroupElement, CliError> {
    let mut c = Vec::new();
    let mut offset = 0;
    for part in text.split(',') {
        let t = part.trim();
        let at = offset + part.find(t).unwrap_or(0);
        c.push(t.parse::<i64>().map_err(|_| ParseError {
            position: at,
            message: format!("malformed coordinate {t:?}"),
        })?);
        offset += part.len() + 1;
    }
    Ok(ring.group().element_i64(&c)?)
}

fn fiber(req: &CommandRequest) -> Result<Response, CliError> {
    let c = load_cox(&input(req, 0, "Cox")?)?;
    let ring = c.ring();
    let text_prime = req.options.prime.as_deref().ok_or_else(|| CliError::Usage("fiber needs --prime".into()))?;
    let p = parse_prime(ring, text_prime)?;
    let inv = fiber_invariants(ring, &p)?;
    let mut record = json!({"prime": p.indices(), "fiber": invariants_record(&inv)?});
    let mut text = format!("G/G_p over {} = {}\n", prime_text(ring, &p), invariants_text(&inv));
    if let Some(d) = req.options.degree.as_deref() {
        let a = AtomPoint::new(ring.clone(), p, &parse_degree(ring, d)?)?;
        record["atom"] = atom_record(&a)?;
        let kind = if a.is_standard() { "standard" } else { "non-standard" };
        let _ = writeln!(text, "atom {}~{:?} {kind}", prime_text(ring, &p), coords(a.rep())?);
    }
    Ok(Response::ok(record, text))
}

fn classes(req: &CommandRequest) -> Result<Response, CliError> {
    let c = load_cox(&input(req, 0, "Cox")?)?;
    let set = fiber_classes(c.ring(), req.options.fiber_cap)?;
    let text = set.iter().map(|q| invariants_text(q) + "\n").collect();
    let records = set.iter().map(invariants_record).collect::<Result<Vec<_>, _>>()?;
    Ok(Response::ok(json!({ "classes": records }), text))
}

fn irrelevant(req: &CommandRequest) -> Result<Response, CliError> {
    let c = load_cox(&input(req, 0, "Cox")?)?;
    let ring = c.ring();
    let b = irrelevant_ideal(&c);
    let names: Vec<String> = b.generators().iter().map(|m| monomial_text(ring, m)).collect();
    let text = format!("B = <{}>\n", names.join(", "));
    Ok(Response::ok(
        json!({
            "generators": b.generators().iter().map(|m| m.exponents().to_vec()).collect::<Vec<_>>(),
            "monomials": names,
        }),
        text,
    ))
}

fn from_fan(req: &CommandRequest) -> Result<Response, CliError> {
    let path = input(req, 0, "fan")?;
    let record: CoxRecord = parse_json(&path)?;
    let fan = record
        .fan
        .as_ref()
        .ok_or_else(|| CliError::Core(atomspec::Error::Input("file has no \"fan\" entry".into())))?;
    let c = cox_from_fan(&fan_from_record(fan)?)?;
    let out = cox_to_record(&c)?;
    let ring = c.ring();
    let mut text = format!("G = {}\n", invariants_text(&ring.group().invariants()));
    for (name, d) in ring.names().iter().zip(ring.degrees()) {
        let _ = writeln!(text, "deg {name} = {:?}", coords(d)?);
    }
    Ok(Response::ok(serde_json::to_value(out).expect("records serialize"), text))
}

/// Oracle tallies over the sampled modules.
#[derive(Default)]
struct OracleTally {
    factors: usize,
    witnessed: usize,
    inconclusive: usize,
    contradictions: usize,
}

fn oracle_on(c: &CoxData, m: &PresentedModule, opts: &Options) -> Result<OracleTally, atomspec::Error> {
    let ring = c.ring();
    let cap = (!ring.is_pointed()).then_some(opts.degree_cap);
    let s = c.sigma();
    let mut t = OracleTally::default();
    for factor in prime_filtration(m)?.factors() {
        t.factors += 1;
        let cyclic = PresentedModule::cyclic(ring.clone(), &factor.prime.as_ideal(), &factor.twist)?;
        for sigma in s.members() {
            let f = s.complement_monomial(sigma);
            let in_kernel = factor_in_loc_kernel(ring, &f, &factor.prime, &factor.twist)?;
            let w = brute_force_loc_piece(ring, &f, &cyclic, &ring.group().zero(), opts.k_max, cap)?;
            match (in_kernel, w.is_some()) {
                (true, true) => t.contradictions += 1,
                (false, true) => t.witnessed += 1,
                (false, false) => t.inconclusive += 1,
                (true, false) => {}
            }
        }
    }
    Ok(t)
}

fn verify(req: &CommandRequest) -> Result<Response, CliError> {
    let c = load_cox(&input(req, 0, "Cox")?)?;
    let opts = &req.options;
    let ring = c.ring();
    let pool = pool(opts.threads)?;

    let main2 = main2_identity_report(&c, opts.coset_window)?;
    let atoms = enumerate_atoms(ring, opts.coset_window, DEFAULT_PRIME_CAP)?;
    let s = c.sigma();
    let hats: Vec<Monomial> = s.members().map(|m| s.complement_monomial(m)).collect();
    let decomposition: Vec<bool> = pool.install(|| {
        hats.par_iter()
            .map(|f| kernel_decomposition_check(ring, f, &atoms))
            .collect::<Result<_, _>>()
    })?;
    let decomposition_ok = decomposition.iter().all(|&b| b);
    let lemma = technical_lemma_check(&c, &atoms)?;

    let mut r = rng(opts.seed);
    let modules: Vec<PresentedModule> = (0..opts.samples)
        .map(|_| random_module(&mut r, ring, ModuleShape::default()))
        .collect();
    let per_module: Vec<(bool, OracleTally)> = pool.install(|| {
        modules
            .par_iter()
            .map(|m| {
                let agree = sheafifies_to_zero(&c, m)?.verdict == sheafifies_to_zero_loc(&c, m)?;
                Ok((agree, oracle_on(&c, m, opts)?))
            })
            .collect::<Result<_, atomspec::Error>>()
    })?;
    let disagreements = per_module.iter().filter(|(a, _)| !a).count();
    let mut tally = OracleTally::default();
    for (_, t) in &per_module {
        tally.factors += t.factors;
        tally.witnessed += t.witnessed;
        tally.inconclusive += t.inconclusive;
        tally.contradictions += t.contradictions;
    }

    let ok = main2.holds() && decomposition_ok && lemma && disagreements == 0 && tally.contradictions == 0;
    let failures = main2
        .failures
        .iter()
        .map(|(p, g)| Ok(json!({"prime": p.indices(), "rep": coords(g)?})))
        .collect::<Result<Vec<_>, CliError>>()?;
    let record = json!({
        "coset_window": opts.coset_window,
        "k_max": opts.k_max,
        "seed": opts.seed,
        "samples": opts.samples,
        "intersection_identity": {"atoms": main2.checked, "holds": main2.holds(), "failures": failures},
        "kernel_decomposition": {"members": hats.len(), "atoms": atoms.len(), "holds": decomposition_ok},
        "technical_lemma": lemma,
        "route_agreement": {"modules": modules.len(), "disagreements": disagreements},
        "oracle": {
            "factors": tally.factors,
            "witnessed": tally.witnessed,
            "inconclusive": tally.inconclusive,
            "contradictions": tally.contradictions,
        },
        "ok": ok,
    });
    let mut text = String::new();
    let _ = writeln!(text, "coset window {}, k_max {}, seed {}", opts.coset_window, opts.k_max, opts.seed);
    let _ = writeln!(text, "intersection identity: {} atoms, holds {}", main2.checked, main2.holds());
    let _ = writeln!(text, "kernel decomposition: {} members, holds {decomposition_ok}", hats.len());
    let _ = writeln!(text, "technical lemma: {lemma}");
    let _ = writeln!(text, "route agreement: {} modules, {disagreements} disagreements", modules.len());
    let _ = writeln!(
        text,
        "oracle: {} witnessed, {} inconclusive within bound, {} contradictions",
        tally.witnessed, tally.inconclusive, tally.contradictions
    );
    let _ = writeln!(text, "ok: {ok}");
    Ok(Response {
        record,
        text,
        exit_code: if ok { 0 } else { 4 },
    })
}
