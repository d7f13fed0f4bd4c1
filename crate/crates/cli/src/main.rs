//! `workbench`: batch frontend over `workbench-core`.

mod output;

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::{Deserialize, Serialize};
use serde_json::json;
use workbench_core::bmo_hecke::{
    bmo_generous_toral, bmo_trivial, eigensheaf_multiset, hecke_generous, parse_int_vec, AtomicClass,
};
use workbench_core::k0_engine::{
    alternating_expansion, hecke_k0_trivial, pgl2_block, positivity_report, verify_gamma, K0Vector,
};
use workbench_core::kottwitz::{enumerate_bg, newton_leq, parse_bclass, strata_poset, BClass};
use workbench_core::parameters::{
    centralizer, fiber_orbits, is_generic, is_generous, vogan_orbits, FiberOrbit, ToralParameter, CANDIDATE,
};
use workbench_core::poset::Poset;
use workbench_core::rep_theory::{long_simple_roots, parabolic_filtration, tensor_decompose, weyl_dim, IrrepLabel};
use workbench_core::stalk_engine::{Family, Pgl2Stalks, StalkTable};
use workbench_core::{fmt_int_vec, parse_q, Coweight, DatumSpec, Error, RootDatum, Weight, Q};

use output::{Emission, Format};

#[derive(Parser)]
#[command(name = "workbench", version, about = "Exact computations for split reductive groups and Bun_G bookkeeping")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Summary of a root datum: roots, coroots, Cartan matrix, 2ρ, 2ρ^∨.
    RootDatum(Args),
    /// Weyl group elements as reduced words and matrices.
    Weyl(Args),
    /// Decompose V(λ) ⊗ V(rep).
    Tensor(Args),
    /// Graded pieces of V(λ) restricted to a standard parabolic.
    ParabolicFiltration(Args),
    /// Enumerate B(G) in a box of slopes.
    BgEnum(Args),
    /// Compare two classes `ν@κ;ν'@κ'` in the Newton order.
    NewtonOrder(Args),
    /// Hasse diagram of the Newton order on an enumerated box.
    StrataPoset(Args),
    /// Genericity and generosity of a toral parameter.
    ParamCheck(Args),
    /// Orbits of the centralizer on the Vogan variety.
    VoganFiber(Args),
    /// Orbits on pairs (u, N) of the reduced fiber.
    FullFiber(Args),
    /// The pair (b, π) attached to λ (trivial parameter) or to slopes j (generous toral parameter).
    Bmo(Args),
    /// Hecke operator T_V on (b_j, π_j) for a generous toral parameter.
    Hecke(Args),
    /// Window of the eigensheaf of a generous toral parameter.
    Eigensheaf(Args),
    /// Alternating Weyl-sum expansion of the class attached to λ + 2ρ.
    K0Expand(Args),
    /// K0-level Hecke operator at the trivial parameter.
    K0Hecke(Args),
    /// γ-map checks on the PGL(2) trivial block window b_0..b_N.
    K0Verify(Args),
    /// Stalk tables of PGL(2) trivial-parameter sheaves.
    Pgl2Stalks(Args),
}

/// Inputs shared by every subcommand; a config file uses the same keys.
#[derive(clap::Args, Debug, Clone, Default, Deserialize)]
#[serde(default, rename_all = "kebab-case", deny_unknown_fields)]
struct Args {
    /// Preset group, e.g. GL3, PGL(2), Sp4, GSp(4)
    #[arg(long)]
    group: Option<String>,
    /// Comma-separated integer vector
    #[arg(long, allow_hyphen_values = true)]
    lambda: Option<String>,
    /// Toral parameter as `symbol:twist` items, e.g. a:0,a:1
    #[arg(long)]
    chars: Option<String>,
    /// Integer slopes j, or `ν@κ` classes separated by `;`
    #[arg(long, allow_hyphen_values = true)]
    slopes: Option<String>,
    /// Highest weight of a representation, comma-separated
    #[arg(long, allow_hyphen_values = true)]
    rep: Option<String>,
    /// Bound on |ν_i| (rational)
    #[arg(long)]
    bound: Option<String>,
    /// Largest slope denominator
    #[arg(long)]
    denom: Option<i64>,
    /// Window size
    #[arg(long)]
    window: Option<i64>,
    /// f, sharp, star or shriek
    #[arg(long)]
    family: Option<String>,
    #[arg(long)]
    n: Option<i64>,
    /// Levi subset: 1-based simple root indices, or klingen, siegel, none, all
    #[arg(long)]
    levi: Option<String>,
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// TOML or JSON file with the same keys; flags take precedence
    #[arg(long)]
    #[serde(skip)]
    config: Option<PathBuf>,
    /// Explicit datum (config files only)
    #[arg(skip)]
    datum: Option<DatumSpec>,
}

impl Args {
    fn merged_over(self, base: Args) -> Args {
        Args {
            group: self.group.or(base.group),
            lambda: self.lambda.or(base.lambda),
            chars: self.chars.or(base.chars),
            slopes: self.slopes.or(base.slopes),
            rep: self.rep.or(base.rep),
            bound: self.bound.or(base.bound),
            denom: self.denom.or(base.denom),
            window: self.window.or(base.window),
            family: self.family.or(base.family),
            n: self.n.or(base.n),
            levi: self.levi.or(base.levi),
            format: self.format.or(base.format),
            config: self.config,
            datum: self.datum.or(base.datum),
        }
    }
}

enum Failure {
    Usage(String),
    Domain(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

type Out = Result<Emission, Failure>;

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn need<T: Clone>(v: &Option<T>, flag: &str) -> Result<T, Failure> {
    v.clone().ok_or_else(|| usage(format!("missing required flag --{flag}")))
}

fn load_config(path: &Path) -> Result<Args, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
    let is_json = path.extension().is_some_and(|e| e == "json");
    let parsed = if is_json {
        serde_json::from_str(&text).map_err(|e| e.to_string())
    } else {
        toml::from_str(&text).map_err(|e| e.to_string())
    };
    parsed.map_err(|e| usage(format!("bad config {}: {e}", path.display())))
}

fn datum(a: &Args) -> Result<RootDatum, Failure> {
    if let Some(spec) = &a.datum {
        if a.group.is_none() {
            return Ok(RootDatum::from_spec(spec)?);
        }
    }
    Ok(RootDatum::preset(&need(&a.group, "group")?)?)
}

fn ints(a: &Option<String>, flag: &str) -> Result<Vec<i64>, Failure> {
    Ok(parse_int_vec(&need(a, flag)?)?)
}

fn param(a: &Args) -> Result<ToralParameter, Failure> {
    Ok(ToralParameter::parse(&need(&a.chars, "chars")?)?)
}

fn bound(a: &Args) -> Result<Q, Failure> {
    Ok(a.bound.as_deref().map(parse_q).transpose()?.unwrap_or(Q::from_integer(2)))
}

fn levi_subset(g: &RootDatum, text: &str) -> Result<Vec<usize>, Failure> {
    let long = long_simple_roots(g);
    let r = g.semisimple_rank();
    match text.trim().to_ascii_lowercase().as_str() {
        "klingen" => Ok(long),
        "siegel" => Ok((0..r).filter(|i| !long.contains(i)).collect()),
        "none" | "" => Ok(Vec::new()),
        "all" => Ok((0..r).collect()),
        _ => parse_int_vec(text)?
            .into_iter()
            .map(|i| {
                if i >= 1 && (i as usize) <= r {
                    Ok(i as usize - 1)
                } else {
                    Err(Failure::Domain(Error::BadLeviSubset(format!("index {i} outside 1..={r}"))))
                }
            })
            .collect(),
    }
}

fn root_datum(a: &Args) -> Out {
    let g = datum(a)?;
    let s = g.summary()?;
    let mut p = String::new();
    let _ = writeln!(p, "group: {}", s.name.clone().unwrap_or_else(|| "explicit".into()));
    let _ = writeln!(p, "rank {} (semisimple rank {}), |W| = {}", s.rank, s.semisimple_rank, s.weyl_order);
    let _ = writeln!(p, "characters: {}", s.character_basis.join(", "));
    let _ = writeln!(p, "simple roots: {}", rows(&s.simple_roots));
    let _ = writeln!(p, "simple coroots: {}", rows(&s.simple_coroots));
    let _ = writeln!(p, "cartan: {}", rows(&s.cartan));
    let _ = writeln!(p, "positive roots: {}", rows(&s.positive_roots));
    let _ = writeln!(p, "2ρ = {}, 2ρ^∨ = {}", fmt_int_vec(&s.two_rho), fmt_int_vec(&s.two_rho_check));
    Ok(Emission::new(&s, p))
}

fn rows(m: &[Vec<i64>]) -> String {
    m.iter().map(|r| fmt_int_vec(r)).collect::<Vec<_>>().join(" ")
}

fn word_string(word: &[usize]) -> String {
    if word.is_empty() {
        return "e".into();
    }
    word.iter().map(|i| format!("s{}", i + 1)).collect::<Vec<_>>().join("")
}

fn weyl(a: &Args) -> Out {
    let g = datum(a)?;
    let elements = g.weyl_group()?;
    let json = json!({
        "order": elements.len(),
        "elements": elements.iter().map(|w| json!({
            "word": w.word.iter().map(|i| i + 1).collect::<Vec<_>>(),
            "length": w.length(),
            "matrix": w.matrix,
        })).collect::<Vec<_>>(),
    });
    let mut p = format!("|W| = {}\n", elements.len());
    let mut csv = Vec::new();
    for w in elements {
        let _ = writeln!(p, "{:<12} ℓ={} {}", word_string(&w.word), w.length(), rows(&w.matrix));
        csv.push(vec![word_string(&w.word), w.length().to_string(), rows(&w.matrix)]);
    }
    Ok(Emission::new(json, p).with_csv(vec!["word", "length", "matrix"], csv))
}

fn tensor(a: &Args) -> Out {
    let g = datum(a)?;
    let l = Weight(ints(&a.lambda, "lambda")?);
    let m = Weight(ints(&a.rep, "rep")?);
    let dec = tensor_decompose(&g, &l, &m)?;
    let mut terms = Vec::new();
    let mut csv = Vec::new();
    for (w, k) in &dec {
        let dim = weyl_dim(&g, w)?;
        terms.push(json!({ "highest_weight": w, "multiplicity": k, "dim": dim }));
        csv.push(vec![w.to_string(), k.to_string(), dim.to_string()]);
    }
    let parts: Vec<String> = dec
        .iter()
        .map(|(w, k)| if *k == 1 { format!("V{w}") } else { format!("{k}·V{w}") })
        .collect();
    let pretty = format!("V{l} ⊗ V{m} = {}\n", parts.join(" ⊕ "));
    let json = json!({ "lambda": l, "mu": m, "dim": weyl_dim(&g, &l)? * weyl_dim(&g, &m)?, "terms": terms });
    Ok(Emission::new(json, pretty).with_csv(vec!["highest_weight", "multiplicity", "dim"], csv))
}

fn filtration(a: &Args) -> Out {
    let g = datum(a)?;
    let l = Weight(ints(&a.lambda, "lambda")?);
    let levi = levi_subset(&g, &need(&a.levi, "levi")?)?;
    let f = parabolic_filtration(&g, &l, &levi)?;
    let mut p = format!(
        "V{l} on the parabolic with Levi {{{}}}, grading {}\n",
        levi.iter().map(|i| format!("α{}", i + 1)).collect::<Vec<_>>().join(","),
        fmt_int_vec(&f.grading_cocharacter)
    );
    let mut csv = Vec::new();
    for lv in &f.levels {
        let irreps: Vec<String> = lv
            .levi_irreps
            .iter()
            .map(|(w, k)| if *k == 1 { format!("V{w}") } else { format!("{k}·V{w}") })
            .collect();
        let _ = writeln!(p, "level {:>3}: dim {:<3} {}", lv.level, lv.dim, irreps.join(" ⊕ "));
        csv.push(vec![lv.level.to_string(), lv.dim.to_string(), irreps.join(" + ")]);
    }
    Ok(Emission::new(&f, p).with_csv(vec!["level", "dim", "levi_irreps"], csv))
}

fn class_json(b: &BClass) -> serde_json::Value {
    let mut v = serde_json::to_value(b).expect("serializable");
    v["kappa_coords"] = json!(b.kappa.coords());
    v
}

fn bg_enum(a: &Args) -> Out {
    let g = datum(a)?;
    let classes = enumerate_bg(&g, bound(a)?, a.denom.unwrap_or(2));
    let mut p = String::new();
    let mut csv = Vec::new();
    for b in &classes {
        let _ = writeln!(
            p,
            "{:<16} ν={} κ={} shift={} {}",
            b.display,
            b.newton,
            b.kappa,
            b.shift,
            if b.basic { "basic" } else { "" }
        );
        csv.push(vec![
            b.display.clone(),
            b.newton.to_string(),
            b.kappa.to_string(),
            b.shift.to_string(),
            b.basic.to_string(),
        ]);
    }
    let json: Vec<_> = classes.iter().map(class_json).collect();
    Ok(Emission::new(json, p).with_csv(vec!["class", "newton", "kappa", "shift", "basic"], csv))
}

fn newton_order(a: &Args) -> Out {
    let g = datum(a)?;
    let text = need(&a.slopes, "slopes")?;
    let Some((x, y)) = text.split_once(';') else {
        return Err(usage("--slopes must hold two classes separated by `;`"));
    };
    let (b, c) = (parse_bclass(&g, x)?, parse_bclass(&g, y)?);
    let (leq, geq) = (newton_leq(&g, &b, &c), newton_leq(&g, &c, &b));
    let relation = match (leq, geq) {
        (true, true) => "=",
        (true, false) => "⪯",
        (false, true) => "⪰",
        (false, false) => "incomparable",
    };
    let json = json!({ "b": class_json(&b), "b_prime": class_json(&c), "leq": leq, "geq": geq });
    Ok(Emission::new(json, format!("{} {relation} {}\n", b.display, c.display)))
}

fn poset_pretty<T>(p: &Poset<T>, label: impl Fn(&T) -> String) -> String {
    let mut out = String::new();
    for (i, n) in p.nodes().iter().enumerate() {
        let above: Vec<String> = p
            .covering_edges()
            .iter()
            .filter(|e| e[0] == i)
            .map(|e| label(&p.nodes()[e[1]]))
            .collect();
        let _ = writeln!(out, "{:<20} ⋖ {}", label(n), if above.is_empty() { "—".into() } else { above.join(", ") });
    }
    out
}

fn strata(a: &Args) -> Out {
    let g = datum(a)?;
    let p = strata_poset(&g, enumerate_bg(&g, bound(a)?, a.denom.unwrap_or(2)));
    let json = p.to_json("newton_order", class_json);
    let csv = p
        .covering_edges()
        .iter()
        .map(|e| vec![p.nodes()[e[0]].display.clone(), p.nodes()[e[1]].display.clone()])
        .collect();
    Ok(Emission::new(json, poset_pretty(&p, |b| b.display.clone()))
        .with_dot(p.to_dot("newton_order", |b| b.display.clone()))
        .with_csv(vec!["lower", "upper"], csv))
}

fn param_check(a: &Args) -> Out {
    let phi = param(a)?;
    let s = centralizer(&phi);
    let (generic, generous) = (is_generic(&phi), is_generous(&phi));
    let json = json!({
        "parameter": phi.to_string(),
        "generic": generic,
        "generous": generous,
        "centralizer": s.describe(),
        "centralizer_dim": s.dim(),
    });
    let pretty = format!(
        "φ = {phi}\ngeneric: {generic}\ngenerous: {generous}\nS_φ = {}\n",
        s.describe()
    );
    Ok(Emission::new(json, pretty).with_csv(
        vec!["parameter", "generic", "generous", "centralizer"],
        vec![vec![phi.to_string(), generic.to_string(), generous.to_string(), s.describe()]],
    ))
}

fn fiber(p: Poset<FiberOrbit>, title: &str) -> Out {
    let json = p.to_json(CANDIDATE, |o| o.clone());
    let csv = p
        .nodes()
        .iter()
        .map(|o| {
            let ranks: Vec<String> = o.rank_data.iter().map(|(k, v)| format!("{k}={v}")).collect();
            vec![o.name.clone(), o.dim.to_string(), o.u_trivial.to_string(), ranks.join(" ")]
        })
        .collect();
    let pretty = format!(
        "{title}: {} orbits (relation: {CANDIDATE})\n{}",
        p.len(),
        poset_pretty(&p, |o| o.name.clone())
    );
    Ok(Emission::new(json, pretty)
        .with_dot(p.to_dot(CANDIDATE, |o| o.name.clone()))
        .with_csv(vec!["name", "dim", "u_trivial", "rank_data"], csv))
}

fn atomic_json(c: &AtomicClass) -> serde_json::Value {
    json!({ "display": c.to_string(), "b": class_json(&c.b), "pi": c.pi, "pi_display": c.pi.to_string() })
}

fn bmo(a: &Args) -> Out {
    let c = if a.chars.is_some() {
        bmo_generous_toral(&param(a)?, &ints(&a.slopes, "slopes")?)?
    } else {
        bmo_trivial(&datum(a)?, &Coweight(ints(&a.lambda, "lambda")?))?
    };
    Ok(Emission::new(atomic_json(&c), format!("{c}\n")))
}

fn hecke(a: &Args) -> Out {
    let phi = param(a)?;
    let j = ints(&a.slopes, "slopes")?;
    let v = Weight(ints(&a.rep, "rep")?);
    let terms = hecke_generous(&phi, &j, &v)?;
    let mut p = String::new();
    let mut csv = Vec::new();
    let mut json = Vec::new();
    for t in &terms {
        let _ = writeln!(p, "{} ⊠ {}  (weight {}, mult {})", t.output, t.monomial, fmt_int_vec(&t.weight), t.multiplicity);
        csv.push(vec![
            t.output.to_string(),
            t.monomial.to_string(),
            fmt_int_vec(&t.weight),
            t.multiplicity.to_string(),
        ]);
        json.push(json!({
            "input": atomic_json(&t.input),
            "rep": t.rep,
            "weight": t.weight,
            "output": atomic_json(&t.output),
            "monomial": t.monomial.to_string(),
            "multiplicity": t.multiplicity,
        }));
    }
    Ok(Emission::new(json, p).with_csv(vec!["output", "monomial", "weight", "multiplicity"], csv))
}

fn eigensheaf(a: &Args) -> Out {
    let phi = param(a)?;
    let e = eigensheaf_multiset(&phi, a.window.unwrap_or(1))?;
    let mut p = format!("𝓕_φ for φ = {phi}, window |j_i| ≤ {} (truncated)\n", e.window);
    let mut csv = Vec::new();
    for (c, m) in &e.terms {
        let _ = writeln!(p, "{m} × {c}");
        csv.push(vec![c.to_string(), m.to_string()]);
    }
    let json = json!({
        "parameter": phi.to_string(),
        "window": e.window,
        "truncated": e.truncated,
        "terms": e.terms.iter().map(|(c, m)| json!({ "class": atomic_json(c), "multiplicity": m })).collect::<Vec<_>>(),
    });
    Ok(Emission::new(json, p).with_csv(vec!["class", "multiplicity"], csv))
}

fn k0_emission(x: &K0Vector) -> Emission {
    let csv = x.coeffs.iter().map(|(c, v)| vec![c.to_string(), v.to_string()]).collect();
    Emission::new(x.to_json(), format!("{x}\n")).with_csv(vec!["class", "coeff"], csv)
}

fn k0_expand(a: &Args) -> Out {
    let g = datum(a)?;
    let lambda = ints(&a.lambda, "lambda")?;
    if lambda.len() != g.rank() {
        return Err(Error::DimensionMismatch(format!("λ has length {}, rank is {}", lambda.len(), g.rank())).into());
    }
    let target: Vec<i64> = lambda.iter().zip(g.two_rho_check()).map(|(l, r)| l + r).collect();
    Ok(k0_emission(&alternating_expansion(&g, &Coweight(target))?))
}

fn k0_hecke(a: &Args) -> Out {
    let g = datum(a)?;
    let lambda = Coweight(ints(&a.lambda, "lambda")?);
    let v = IrrepLabel::new(&g.dual(), Weight(ints(&a.rep, "rep")?))?;
    Ok(k0_emission(&hecke_k0_trivial(&g, &lambda, &v)?))
}

fn k0_verify(a: &Args) -> Out {
    if let Some(name) = &a.group {
        let g = RootDatum::preset(name)?;
        if g != RootDatum::preset("PGL(2)")? {
            return Err(Error::UnsupportedShape(format!("k0-verify has stalk data only for PGL(2), not {name}")).into());
        }
    }
    let top = a.window.unwrap_or(10);
    if top < 0 {
        return Err(usage("--window must be nonnegative"));
    }
    let block = pgl2_block(top)?;
    let report = verify_gamma(&block);
    let positivity = positivity_report(&block)?;
    let mut p = format!("window: {}\n", block.classes.join(", "));
    let _ = writeln!(p, "γ*∘γ_! = id: {}", report.left_inverse);
    let _ = writeln!(p, "γ_! = γ_♯: {}", report.shriek_equals_sharp);
    let _ = writeln!(p, "off-diagonal ♯-stalks vanish: {}", report.off_diagonal_sharp_vanishes);
    let _ = writeln!(p, "γ* and γ_! mutually inverse: {}", report.mutually_inverse);
    let _ = writeln!(p, "window closed: {}", report.window_closed);
    let _ = writeln!(p, "hadal expansion coefficients nonnegative: {}", positivity.all_nonnegative);
    let csv = vec![
        vec!["left_inverse".to_string(), report.left_inverse.to_string()],
        vec!["shriek_equals_sharp".to_string(), report.shriek_equals_sharp.to_string()],
        vec!["off_diagonal_sharp_vanishes".to_string(), report.off_diagonal_sharp_vanishes.to_string()],
        vec!["mutually_inverse".to_string(), report.mutually_inverse.to_string()],
        vec!["window_closed".to_string(), report.window_closed.to_string()],
        vec!["hadal_positivity".to_string(), positivity.all_nonnegative.to_string()],
    ];
    let json = json!({ "block": block, "report": report, "positivity": positivity });
    Ok(Emission::new(json, p).with_csv(vec!["check", "holds"], csv))
}

#[derive(Serialize)]
struct StalkOutput {
    family: String,
    n: i64,
    #[serde(flatten)]
    table: workbench_core::stalk_engine::StalkTableJson,
}

fn stalk_pretty(t: &StalkTable) -> String {
    let mut p = t.name.clone();
    if let Some(top) = &t.truncated_above {
        let _ = write!(p, "  (exact up to {})", top.display);
    }
    p.push('\n');
    for note in &t.notes {
        let _ = writeln!(p, "note: {note}");
    }
    let renorm = t.renormalized();
    for (b, stalk) in &t.entries {
        let _ = writeln!(p, "{} (shift {}):", b.display, b.shift);
        for (d, labels) in stalk {
            let ls: Vec<String> = labels.iter().map(|(l, m)| if *m == 1 { l.to_string() } else { format!("{m}·{l}") }).collect();
            let _ = writeln!(p, "  H^{d} = {}", ls.join(" ⊕ "));
        }
        let parts: Vec<String> = renorm[b]
            .iter()
            .flat_map(|(d, labels)| {
                labels.keys().map(move |l| if *d == 0 { l.to_string() } else { format!("{l}[{}]", -d) })
            })
            .collect();
        let _ = writeln!(p, "  renormalized: {}", parts.join(" ⊕ "));
    }
    p
}

fn pgl2_stalks(a: &Args) -> Out {
    let family: Family = need(&a.family, "family")?.parse()?;
    let n = need(&a.n, "n")?;
    let window = a.window.unwrap_or(n + 8);
    let mut s = Pgl2Stalks::new();
    let t = s.compute(family, n, window)?;
    let mut csv = Vec::new();
    let renorm = t.renormalized();
    for (b, stalk) in &t.entries {
        for (d, labels) in stalk {
            for (l, m) in labels {
                let untwisted = renorm[b][&(d - b.shift)].keys().next().map(ToString::to_string).unwrap_or_default();
                csv.push(vec![b.display.clone(), d.to_string(), l.to_string(), m.to_string(), (d - b.shift).to_string(), untwisted]);
            }
        }
    }
    let json = StalkOutput {
        family: need(&a.family, "family")?.to_ascii_lowercase(),
        n,
        table: t.to_json(),
    };
    Ok(Emission::new(json, stalk_pretty(&t))
        .with_csv(vec!["class", "degree", "label", "multiplicity", "renormalized_degree", "renormalized_label"], csv))
}

fn dispatch(command: &Command) -> (&Args, fn(&Args) -> Out) {
    match command {
        Command::RootDatum(a) => (a, root_datum),
        Command::Weyl(a) => (a, weyl),
        Command::Tensor(a) => (a, tensor),
        Command::ParabolicFiltration(a) => (a, filtration),
        Command::BgEnum(a) => (a, bg_enum),
        Command::NewtonOrder(a) => (a, newton_order),
        Command::StrataPoset(a) => (a, strata),
        Command::ParamCheck(a) => (a, param_check),
        Command::VoganFiber(a) => (a, |a| fiber(vogan_orbits(&param(a)?), "Vogan variety")),
        Command::FullFiber(a) => (a, |a| fiber(fiber_orbits(&param(a)?)?, "reduced fiber")),
        Command::Bmo(a) => (a, bmo),
        Command::Hecke(a) => (a, hecke),
        Command::Eigensheaf(a) => (a, eigensheaf),
        Command::K0Expand(a) => (a, k0_expand),
        Command::K0Hecke(a) => (a, k0_hecke),
        Command::K0Verify(a) => (a, k0_verify),
        Command::Pgl2Stalks(a) => (a, pgl2_stalks),
    }
}

fn run(cli: Cli) -> Result<String, Failure> {
    let (flags, handler) = dispatch(&cli.command);
    let args = match &flags.config {
        Some(path) => flags.clone().merged_over(load_config(path)?),
        None => flags.clone(),
    };
    let emission = handler(&args)?;
    emission.render(args.format.unwrap_or(Format::Pretty)).map_err(Failure::Usage)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(Failure::Domain(e)) => {
            eprintln!("error[{}]: {e}", e.code());
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error[Usage]: {msg}");
            ExitCode::from(2)
        }
    }
}
