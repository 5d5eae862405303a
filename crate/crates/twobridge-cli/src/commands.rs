use num_complex::Complex;
use serde_json::{json, Value};
use twobridge::coloring::{rep_polynomial, ui_sequence, Orientation};
use twobridge::conway::{canonical_word, even_expansion, parse_descriptor, ConwayWord, Descriptor, Fraction};
use twobridge::epi::{build_census, divisibility_check, ors_factor_property, CensusOptions, OrsSpec};
use twobridge::geometry::arc_vectors_at_root;
use twobridge::geometry::{distinct_roots, geometry_at_root, ParabolicRep, RegionConvention, Root, RootSelector};
use twobridge::riley::{riley_polynomial, split_polynomial, verify_bridge};
use twobridge::scalar::{complex_json, complex_text, decimals_for, geometry_decimals, ComplexExt};
use twobridge::{Error, GPoly, Real, Real1024, Real128, Real256, Real512, Result};

use crate::{Cli, Cmd};

pub struct Output {
    pub json: Value,
    pub text: String,
}

const LADDER: [u32; 5] = [53, 128, 256, 512, 1024];

fn rung(bits: u32) -> Result<usize> {
    LADDER
        .iter()
        .position(|&b| b >= bits)
        .ok_or_else(|| Error::InvalidInput(format!("precision {bits} exceeds the supported maximum of 1024 bits")))
}

/// Run `f` at the requested precision, moving up the ladder on numeric failure.
fn with_ladder(start: u32, f: impl Fn(u32) -> Result<Output>) -> Result<Output> {
    let mut i = rung(start)?;
    loop {
        match f(LADDER[i]) {
            Err(Error::Numeric(m)) if i + 1 < LADDER.len() => {
                eprintln!("note: {m}; retrying at {} bits", LADDER[i + 1]);
                i += 1;
            }
            r => return r,
        }
    }
}

macro_rules! at_bits {
    ($bits:expr, $f:ident ( $($arg:expr),* )) => {
        match $bits {
            53 => $f::<f64>($($arg),*),
            128 => $f::<Real128>($($arg),*),
            256 => $f::<Real256>($($arg),*),
            512 => $f::<Real512>($($arg),*),
            _ => $f::<Real1024>($($arg),*),
        }
    };
}

fn descriptor(s: &str) -> Result<Descriptor> {
    parse_descriptor(s)
}

fn kind(f: &Fraction) -> &'static str {
    if f.is_knot() {
        "knot"
    } else {
        "link"
    }
}

fn poly_text(p: &GPoly) -> String {
    p.to_string()
}

fn require_knot(f: &Fraction) -> Result<()> {
    if f.is_knot() {
        Ok(())
    } else {
        Err(Error::InvalidInput(format!("{f} is a link; this command needs a knot")))
    }
}

pub fn run(cli: &Cli) -> Result<Output> {
    match &cli.cmd {
        Cmd::Slope { desc } => {
            let f = descriptor(desc)?.fraction()?;
            Ok(Output {
                json: json!({
                    "descriptor": desc,
                    "alpha": f.alpha,
                    "beta": f.signed_beta(),
                    "fraction": f.to_string(),
                    "kind": kind(&f),
                }),
                text: format!("{f} ({})\n", kind(&f)),
            })
        }
        Cmd::Canon { desc } => {
            let w = canonical_word(&descriptor(desc)?.fraction()?)?;
            Ok(Output {
                json: json!({ "descriptor": desc, "canonical": w.to_string(), "j_form": w.to_j().to_string() }),
                text: format!("{w}\n"),
            })
        }
        Cmd::Even { desc } => {
            let w = even_expansion(&descriptor(desc)?.fraction()?)?;
            Ok(Output {
                json: json!({ "descriptor": desc, "even": w.to_string(), "j_form": w.to_j().to_string() }),
                text: format!("{w}\n"),
            })
        }
        Cmd::Reppoly { desc } => reppoly(desc),
        Cmd::Uiseq { desc, twist } => {
            let w = descriptor(desc)?.word()?;
            let o = if *twist { Orientation::TWIST_A } else { Orientation::DEFAULT };
            let seq = ui_sequence(&w, o)?;
            let texts: Vec<String> = seq.iter().map(poly_text).collect();
            let text = texts.iter().enumerate().map(|(i, t)| format!("u_{} = {t}\n", i + 1)).collect();
            Ok(Output { json: json!({ "descriptor": desc, "word": w.to_string(), "ui_sequence": texts }), text })
        }
        Cmd::Riley { desc } => {
            let d = descriptor(desc)?;
            let f = d.fraction()?;
            let r = riley_polynomial(&f)?;
            let p = rep_polynomial(&Descriptor::Fraction(f))?;
            let proof = verify_bridge(&p, &r, f.is_knot())?;
            let sign = if proof.sign > 0 { "" } else { "-" };
            let power = if proof.epsilon == 1 { "u".to_string() } else { format!("u^{}", proof.epsilon) };
            Ok(Output {
                json: json!({
                    "descriptor": desc,
                    "fraction": f.to_string(),
                    "riley_poly": r.to_text_var("y"),
                    "rep_poly": poly_text(&p),
                    "epsilon": proof.epsilon,
                    "sign": proof.sign,
                }),
                text: format!("R(y) = {}\nP(u) = {sign}{power} R(u^2)\n", r.to_text_var("y")),
            })
        }
        Cmd::Split { desc } => {
            let d = descriptor(desc)?;
            require_knot(&d.fraction()?)?;
            let p = rep_polynomial(&d)?;
            let s = split_polynomial(&p, true)?;
            Ok(Output {
                json: json!({
                    "descriptor": desc,
                    "rep_poly": poly_text(&p),
                    "g": poly_text(&s.g),
                    "g_hat": poly_text(&s.g_hat),
                }),
                text: format!("g     = {}\ng_hat = {}\n", s.g, s.g_hat),
            })
        }
        Cmd::Roots { desc } => {
            let d = descriptor(desc)?;
            let p = rep_polynomial(&d)?;
            let sel = selector(cli)?;
            with_ladder(cli.precision, |bits| at_bits!(bits, roots_doc(desc, &p, sel.as_ref())))
        }
        Cmd::Reps { desc } => {
            let d = descriptor(desc)?;
            let w = d.word()?;
            let p = rep_polynomial(&Descriptor::Word(w.clone()))?;
            let sel = selector(cli)?;
            with_ladder(cli.precision, |bits| at_bits!(bits, reps_doc(desc, &w, &p, sel.as_ref())))
        }
        Cmd::Cusp { desc } | Cmd::Volume { desc } => {
            let d = descriptor(desc)?;
            require_knot(&d.fraction()?)?;
            let w = d.word()?;
            let p = rep_polynomial(&Descriptor::Word(w.clone()))?;
            let sel = selector(cli)?;
            let vol = matches!(cli.cmd, Cmd::Volume { .. });
            with_ladder(cli.precision, |bits| at_bits!(bits, geometry_doc(desc, &w, &p, sel.as_ref(), vol)))
        }
        Cmd::Epi { k1, k2 } => {
            let v = divisibility_check(&descriptor(k1)?, &descriptor(k2)?)?;
            let witness = v.witness.map(|w| w.label());
            Ok(Output {
                json: json!({
                    "k1": k1,
                    "k2": k2,
                    "divides": v.divides,
                    "witness": witness,
                    "kind": serde_json::to_value(v.kind).expect("serializable"),
                    "quotient": v.quotient.as_ref().map(poly_text),
                }),
                text: format!("{}\n", v.text()),
            })
        }
        Cmd::Ors { a, c, signs } => ors(a, c, signs.as_deref()),
        Cmd::Census { max_alpha, no_geometry } => {
            let path = cli.out.clone().unwrap_or_else(|| "census.jsonl".into());
            let opts = CensusOptions { max_alpha: *max_alpha, jobs: cli.jobs, geometry: !no_geometry };
            let s = build_census(&opts, &path)?;
            Ok(Output {
                json: json!({
                    "path": path.display().to_string(),
                    "max_alpha": max_alpha,
                    "records": s.records,
                    "new_records": s.new_records,
                    "edges": s.edges,
                }),
                text: format!("{}: {} records ({} new), {} edges\n", path.display(), s.records, s.new_records, s.edges),
            })
        }
    }
}

fn reppoly(desc: &str) -> Result<Output> {
    let d = descriptor(desc)?;
    let f = d.fraction()?;
    let p = rep_polynomial(&d)?;
    let mut json = json!({
        "descriptor": desc,
        "kind": kind(&f),
        "rep_poly": poly_text(&p),
        "coeffs": p.to_json()["coeffs"].clone(),
    });
    let mut text = format!("{p}\n");
    if !f.is_knot() {
        let twin = twobridge::coloring::iu_twist(&p)?;
        json["rep_poly_iu"] = Value::String(poly_text(&twin));
        text.push_str(&format!("{twin}\n"));
    }
    Ok(Output { json, text })
}

fn parse_ints(s: &str, what: &str) -> Result<Vec<i64>> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|t| t.trim().parse::<i64>().map_err(|_| Error::Parse(format!("bad integer {t:?} in --{what}"))))
        .collect()
}

fn ors(a: &str, c: &str, signs: Option<&str>) -> Result<Output> {
    let a = parse_ints(a, "a")?;
    let c = parse_ints(c, "c")?;
    let n = c.len() + 1;
    let signs: Vec<i8> = match signs {
        Some(s) => parse_ints(s, "signs")?.into_iter().map(|x| x as i8).collect(),
        None => vec![1; n],
    };
    let spec = OrsSpec::new(a, n, signs, c)?;
    let pr = ors_factor_property(&spec)?;
    Ok(Output {
        json: json!({
            "word": pr.word.to_string(),
            "normalized": pr.normalized.to_string(),
            "kind": if spec.is_knot() { "knot" } else { "link" },
            "seed": spec.seed().to_string(),
            "seed_poly": poly_text(&pr.seed_poly),
            "witness": pr.witness.label(),
            "quotient": poly_text(&pr.quotient),
        }),
        text: format!(
            "{} = {}\nP of {} = {} divides {} of the expansion\n",
            pr.word,
            pr.normalized,
            spec.seed(),
            pr.seed_poly,
            pr.witness.label()
        ),
    })
}

fn selector(cli: &Cli) -> Result<Option<RootSelector>> {
    cli.root.as_deref().map(RootSelector::parse).transpose()
}

/// Sorted distinct roots with their indices, restricted to the selected one if any.
fn chosen<R: Real>(p: &GPoly, sel: Option<&RootSelector>, nonzero: bool) -> Result<Vec<(usize, Root<R>)>> {
    let all = distinct_roots::<R>(p)?;
    if let Some(s) = sel {
        let values: Vec<_> = all.iter().map(|r| r.value.clone()).collect();
        let pick = s.pick(&values)?;
        let i = values.iter().position(|v| v == pick).expect("picked from the list");
        return Ok(vec![(i, all[i].clone())]);
    }
    Ok(all.into_iter().enumerate().filter(|(_, r)| !nonzero || r.value.cabs().to_f64() != 0.0).collect())
}

fn roots_doc<R: Real>(desc: &str, p: &GPoly, sel: Option<&RootSelector>) -> Result<Output> {
    let d = decimals_for(R::bits());
    let roots = chosen::<R>(p, sel, false)?;
    let mut text = format!("{:>4}  {:>4}  root\n", "#", "mult");
    let items: Vec<Value> = roots
        .iter()
        .map(|(i, r)| {
            let rd = r.reliable_decimals(d);
            text.push_str(&format!("{i:>4}  {:>4}  {}\n", r.multiplicity, complex_text(&r.value, rd)));
            json!({
                "index": i,
                "value": complex_json(&r.value, rd),
                "multiplicity": r.multiplicity,
                "error_estimate": format!("{:e}", r.error),
            })
        })
        .collect();
    Ok(Output {
        json: json!({ "descriptor": desc, "rep_poly": poly_text(p), "precision": R::bits(), "roots": items }),
        text,
    })
}

fn matrix_json<R: Real>(m: &[[Complex<R>; 2]; 2], d: usize) -> Value {
    json!([
        [complex_json(&m[0][0], d), complex_json(&m[0][1], d)],
        [complex_json(&m[1][0], d), complex_json(&m[1][1], d)]
    ])
}

fn reps_doc<R: Real>(desc: &str, w: &ConwayWord, p: &GPoly, sel: Option<&RootSelector>) -> Result<Output> {
    let d = decimals_for(R::bits());
    let gd = geometry_decimals(R::bits());
    let mut text = String::new();
    let mut items = Vec::new();
    for (i, r) in chosen::<R>(p, sel, true)? {
        let rep = arc_vectors_at_root(w, &r.value)?;
        let (d, gd) = (r.reliable_decimals(d), gd.min(r.reliable_decimals(d)));
        let top = &rep.levels[0];
        let (ma, mb) = (ParabolicRep::meridian(&top[0]), ParabolicRep::meridian(&top[2]));
        let us: Vec<_> = rep.block_determinants();
        text.push_str(&format!(
            "#{i} r = {}\n  rho(a) = [[{}, {}], [{}, {}]]\n  rho(b) = [[{}, {}], [{}, {}]]\n  closure residual {:e}\n",
            complex_text(&r.value, d),
            complex_text(&ma[0][0], gd),
            complex_text(&ma[0][1], gd),
            complex_text(&ma[1][0], gd),
            complex_text(&ma[1][1], gd),
            complex_text(&mb[0][0], gd),
            complex_text(&mb[0][1], gd),
            complex_text(&mb[1][0], gd),
            complex_text(&mb[1][1], gd),
            rep.closure_residual()
        ));
        items.push(json!({
            "index": i,
            "root": complex_json(&r.value, d),
            "rho_a": matrix_json(&ma, gd),
            "rho_b": matrix_json(&mb, gd),
            "ui_values": us.iter().map(|u| complex_json(u, gd)).collect::<Vec<_>>(),
            "closure_residual": format!("{:e}", rep.closure_residual()),
        }));
    }
    Ok(Output { json: json!({ "descriptor": desc, "precision": R::bits(), "representations": items }), text })
}

fn geometry_doc<R: Real>(
    desc: &str,
    w: &ConwayWord,
    p: &GPoly,
    sel: Option<&RootSelector>,
    volume: bool,
) -> Result<Output> {
    let d = decimals_for(R::bits());
    let gd = geometry_decimals(R::bits());
    let key = if volume { "vol_c" } else { "cusp_shape" };
    let roots = chosen::<R>(p, sel, true)?;
    let mut items = Vec::new();
    let mut text = format!("{:>4}  {:<40}  {key}\n", "#", "root");
    for (i, r) in &roots {
        let g = geometry_at_root(w, &r.value, RegionConvention::default())?;
        let (d, gd) = (r.reliable_decimals(d), gd.min(r.reliable_decimals(d)));
        let val = if volume { &g.volume } else { &g.cusp_shape };
        let shown = complex_text(&r.value, 10);
        text.push_str(&format!("{i:>4}  {shown:<40}  {}\n", complex_text(val, gd)));
        let mut item = json!({ "index": i, "root": complex_json(&r.value, d) });
        item[key] = complex_json(val, gd);
        if volume {
            item["exp_check"] = Value::String(format!("{:e}", g.exp_check));
        }
        items.push(item);
    }
    let json = if sel.is_some() && items.len() == 1 {
        let mut doc = json!({ "descriptor": desc, "precision": R::bits() });
        if let Value::Object(m) = items.pop().expect("one item") {
            for (k, v) in m {
                doc[k.as_str()] = v;
            }
        }
        doc
    } else {
        json!({ "descriptor": desc, "precision": R::bits(), "results": items })
    };
    Ok(Output { json, text })
}
