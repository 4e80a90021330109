//! Text, JSON and CSV rendering. Output depends only on the result values,
//! never on timing or thread count.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::str::FromStr;

use num_rational::Rational64;
use serde::ser::SerializeSeq;
use serde::Serializer;
use serde_json::{json, Value};

use crate::atoms::AtomSet;
use crate::classify::ClassificationRecord;
use crate::error::{Error, Result};
use crate::factorization::LengthSet;
use crate::group::FiniteAbelianGroup;
use crate::lattice::FactorizationPair;
use crate::sequence::{SequenceVec, SupportSet};
use crate::sweep::{ExtremalSet, SweepReport};
use crate::transfer::TransferReduction;
use crate::verify::Verification;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Format {
    #[default]
    Text,
    Json,
    Csv,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "text" => Ok(Format::Text),
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            _ => Err(Error::InvalidParameters(format!(
                "unknown format {s:?}; expected text, json or csv"
            ))),
        }
    }
}

pub fn ratio_string(r: &Rational64) -> String {
    if *r.denom() == 1 {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub(crate) fn serialize_ratio<S: Serializer>(r: &Rational64, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&ratio_string(r))
}

pub(crate) fn serialize_support<S: Serializer>(g0: &SupportSet, s: S) -> Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(g0.len()))?;
    for e in g0.elements() {
        seq.serialize_element(e.coords())?;
    }
    seq.end()
}

fn coords(g0: &SupportSet) -> Value {
    json!(g0.elements().iter().map(|e| e.coords()).collect::<Vec<_>>())
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}

fn csv_table(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for r in rows {
        w.write_record(&r).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 fields")
}

fn join<T: ToString>(xs: impl IntoIterator<Item = T>, sep: &str) -> String {
    xs.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(sep)
}

fn set_text(xs: &BTreeSet<u64>) -> String {
    format!("{{{}}}", join(xs, ", "))
}

pub fn atoms_report(atoms: &AtomSet, fmt: Format) -> String {
    let s = atoms.support();
    match fmt {
        Format::Text => {
            let mut out = format!(
                "group {}, subset {}\n{} atoms, D = {}, K = {}\n",
                s.group(),
                s,
                atoms.len(),
                atoms.davenport(),
                ratio_string(&atoms.cross_number_max())
            );
            for a in atoms.iter() {
                let _ = writeln!(
                    out,
                    "{}  length {}  k {}",
                    s.format_sequence(a),
                    a.len(),
                    ratio_string(&atoms.cross_number(a))
                );
            }
            out
        }
        Format::Json => pretty(&json!({
            "group": s.group().to_string(),
            "subset": coords(s),
            "atom_count": atoms.len(),
            "davenport": atoms.davenport(),
            "cross_number": ratio_string(&atoms.cross_number_max()),
            "atoms": atoms.iter().map(|a| json!({
                "sequence": s.format_sequence(a),
                "exponents": a.exponents(),
                "length": a.len(),
                "cross_number": ratio_string(&atoms.cross_number(a)),
            })).collect::<Vec<_>>(),
        })),
        Format::Csv => csv_table(
            &["sequence", "exponents", "length", "cross_number"],
            atoms.iter().map(|a| {
                vec![
                    s.format_sequence(a),
                    join(a.exponents(), " "),
                    a.len().to_string(),
                    ratio_string(&atoms.cross_number(a)),
                ]
            }),
        ),
    }
}

pub fn lengths_report(s: &SupportSet, b: &SequenceVec, ls: &LengthSet, fmt: Format) -> String {
    let d = ls.distances();
    match fmt {
        Format::Text => format!(
            "B = {}\nL(B) = {}\nΔ(L(B)) = {}\n",
            s.format_sequence(b),
            set_text(ls.lengths()),
            set_text(&d)
        ),
        Format::Json => pretty(&json!({
            "group": s.group().to_string(),
            "subset": coords(s),
            "sequence": s.format_sequence(b),
            "lengths": ls.lengths(),
            "distances": d,
        })),
        Format::Csv => csv_table(
            &["sequence", "lengths", "distances"],
            [vec![s.format_sequence(b), join(ls.lengths(), " "), join(&d, " ")]],
        ),
    }
}

fn factorization_text(atoms: &AtomSet, parts: &[(usize, u64)]) -> String {
    let s = atoms.support();
    join(
        parts.iter().map(|&(j, m)| {
            let a = s.format_sequence(&atoms.atoms()[j]);
            if m == 1 {
                format!("[{a}]")
            } else {
                format!("[{a}]^{m}")
            }
        }),
        " · ",
    )
}

pub fn min_delta_report(
    atoms: &AtomSet,
    min_delta: u64,
    kernel_rank: usize,
    explanation: Option<&FactorizationPair>,
    fmt: Format,
) -> String {
    let s = atoms.support();
    let hf = min_delta == 0;
    match fmt {
        Format::Text => {
            let mut out = format!(
                "group {}, subset {}\nmin Δ = {}\nhalf-factorial = {}\nkernel rank = {}\n",
                s.group(),
                s,
                min_delta,
                hf,
                kernel_rank
            );
            if let Some(e) = explanation {
                let _ = writeln!(out, "B = {}", s.format_sequence(&e.sequence));
                let _ = writeln!(out, "  = {}  ({} atoms)", factorization_text(atoms, &e.longer), e.longer_length);
                let _ = writeln!(out, "  = {}  ({} atoms)", factorization_text(atoms, &e.shorter), e.shorter_length);
            }
            out
        }
        Format::Json => {
            let mut v = json!({
                "group": s.group().to_string(),
                "subset": coords(s),
                "min_delta": min_delta,
                "half_factorial": hf,
                "kernel_rank": kernel_rank,
                "atom_count": atoms.len(),
            });
            if let Some(e) = explanation {
                let side = |parts: &[(usize, u64)]| -> Value {
                    json!(parts.iter().map(|&(j, m)| json!({
                        "atom": s.format_sequence(&atoms.atoms()[j]),
                        "multiplicity": m,
                    })).collect::<Vec<_>>())
                };
                v["explanation"] = json!({
                    "sequence": s.format_sequence(&e.sequence),
                    "longer": side(&e.longer),
                    "shorter": side(&e.shorter),
                    "longer_length": e.longer_length,
                    "shorter_length": e.shorter_length,
                });
            }
            pretty(&v)
        }
        Format::Csv => csv_table(
            &["subset", "min_delta", "half_factorial", "kernel_rank", "atom_count"],
            [vec![
                s.to_string(),
                min_delta.to_string(),
                hf.to_string(),
                kernel_rank.to_string(),
                atoms.len().to_string(),
            ]],
        ),
    }
}

pub fn observed_report(atoms: &AtomSet, max_len: u64, observed: &BTreeSet<u64>, min_delta: u64, fmt: Format) -> String {
    let s = atoms.support();
    let divides = observed.iter().all(|d| min_delta != 0 && d % min_delta == 0);
    match fmt {
        Format::Text => format!(
            "group {}, subset {}\ndistances with |B| ≤ {}: {}\nmin Δ = {} divides all: {}\n",
            s.group(),
            s,
            max_len,
            set_text(observed),
            min_delta,
            divides
        ),
        Format::Json => pretty(&json!({
            "group": s.group().to_string(),
            "subset": coords(s),
            "max_len": max_len,
            "distances": observed,
            "min_delta": min_delta,
            "min_delta_divides": divides,
        })),
        Format::Csv => csv_table(
            &["subset", "max_len", "distances", "min_delta"],
            [vec![s.to_string(), max_len.to_string(), join(observed, " "), min_delta.to_string()]],
        ),
    }
}

pub fn classify_report(group: &FiniteAbelianGroup, rec: &ClassificationRecord, fmt: Format) -> String {
    match fmt {
        Format::Text => format!(
            "group {}, subset {}\nhalf_factorial = {}\nlcn = {}\nminimal_non_hf = {}\ndecomposable = {}\nsimple = {}\nindependent_complement = {}\nmin_delta = {}\ndavenport = {}\ncross_number = {}\natom_count = {}\n",
            group,
            rec.subset,
            rec.half_factorial,
            rec.lcn,
            rec.minimal_non_hf,
            rec.decomposable,
            rec.simple,
            rec.independent_complement,
            rec.min_delta,
            rec.davenport,
            ratio_string(&rec.cross_number),
            rec.atom_count
        ),
        Format::Json => {
            let mut v = json!({ "group": group.to_string() });
            let rec = serde_json::to_value(rec).expect("record serializes");
            if let (Some(m), Value::Object(r)) = (v.as_object_mut(), rec) {
                m.extend(r);
            }
            pretty(&v)
        }
        Format::Csv => csv_table(
            &CLASSIFY_HEADER,
            [vec![
                rec.subset.clone(),
                rec.size.to_string(),
                rec.half_factorial.to_string(),
                rec.lcn.to_string(),
                rec.minimal_non_hf.to_string(),
                rec.decomposable.to_string(),
                rec.simple.to_string(),
                rec.independent_complement.to_string(),
                rec.min_delta.to_string(),
                rec.davenport.to_string(),
                ratio_string(&rec.cross_number),
                rec.atom_count.to_string(),
            ]],
        ),
    }
}

const CLASSIFY_HEADER: [&str; 12] = [
    "subset",
    "size",
    "half_factorial",
    "lcn",
    "minimal_non_hf",
    "decomposable",
    "simple",
    "independent_complement",
    "min_delta",
    "davenport",
    "cross_number",
    "atom_count",
];

fn extremal_flags(e: &ExtremalSet) -> Value {
    json!({
        "plus_minus": e.plus_minus,
        "lcn": e.lcn,
        "rank_plus_one": e.rank_plus_one,
        "avoids_pair_complements": e.avoids_pair_complements,
        "independent_complement": e.independent_complement,
        "simple": e.simple,
        "decomposable": e.decomposable,
        "atom_shape": e.atom_shape,
    })
}

fn flag_text(e: &ExtremalSet) -> String {
    let mut f = Vec::new();
    if e.plus_minus {
        f.push("±g");
    }
    f.push(if e.lcn { "LCN" } else { "non-LCN" });
    if e.rank_plus_one {
        f.push("|G0|=r+1");
    }
    if e.simple {
        f.push("simple");
    }
    if e.independent_complement {
        f.push("independent complement");
    }
    if e.decomposable {
        f.push("decomposable");
    }
    match e.atom_shape {
        Some(true) => f.push("atom bounds hold"),
        Some(false) => f.push("atom bounds FAIL"),
        None => {}
    }
    f.join(", ")
}

pub fn sweep_report(r: &SweepReport, fmt: Format) -> String {
    match fmt {
        Format::Text => {
            let mut out = format!("group {}\n", r.group);
            match &r.delta_star {
                Some(d) => {
                    let _ = writeln!(out, "Δ* = {}", set_text(d));
                }
                None => {
                    let _ = writeln!(out, "minimal sets only; their min Δ values: {}", set_text(&r.minimal_values));
                }
            }
            let _ = writeln!(out, "max Δ* = {}", r.max_delta_star);
            let _ = writeln!(out, "m(G) = {}", r.m_of_g);
            let c = &r.counters;
            let _ = writeln!(
                out,
                "subsets visited {}, atoms enumerated {}, derived from subsets {}, skipped by symmetry {}",
                c.visited, c.enumerated, c.gcd_pruned, c.symmetric
            );
            let _ = writeln!(out, "{} extremal sets:", r.extremal.len());
            for e in &r.extremal {
                let _ = writeln!(out, "  {}  [{}]", e.subset, flag_text(e));
            }
            out
        }
        Format::Json => pretty(&json!({
            "group": r.group.to_string(),
            "delta_star": r.delta_star,
            "max_delta_star": r.max_delta_star,
            "m_of_g": r.m_of_g,
            "extremal": r.extremal.iter().map(|e| json!({
                "subset": coords(&e.subset),
                "flags": extremal_flags(e),
            })).collect::<Vec<_>>(),
        })),
        Format::Csv => csv_table(
            &["subset", "size", "half_factorial", "min_delta", "lcn", "minimal_non_hf", "atom_count"],
            r.records.iter().map(|rec| {
                vec![
                    r.support_of(rec.mask).to_string(),
                    rec.size().to_string(),
                    rec.half_factorial().to_string(),
                    rec.min_delta.to_string(),
                    rec.lcn.to_string(),
                    rec.minimal_non_hf.to_string(),
                    rec.atom_count.map(|c| c.to_string()).unwrap_or_default(),
                ]
            }),
        ),
    }
}

pub fn m_of_g_report(group: &FiniteAbelianGroup, m: u64, fmt: Format) -> String {
    match fmt {
        Format::Text => format!("m({group}) = {m}\n"),
        Format::Json => pretty(&json!({ "group": group.to_string(), "m_of_g": m })),
        Format::Csv => csv_table(&["group", "m_of_g"], [vec![group.to_string(), m.to_string()]]),
    }
}

pub fn construction_report(kind: &str, s: &SupportSet, fmt: Format) -> String {
    match fmt {
        Format::Text => format!("--group {} --subset \"{s}\"\n", s.group()),
        Format::Json => pretty(&json!({
            "kind": kind,
            "group": s.group().to_string(),
            "subset": coords(s),
        })),
        Format::Csv => csv_table(&["kind", "group", "subset"], [vec![kind.to_string(), s.group().to_string(), s.to_string()]]),
    }
}

/// One sampled `B` and its image under the reduction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransferSample {
    pub sequence: String,
    pub image: String,
    pub cross_number: Rational64,
    pub preserved: bool,
}

pub fn transfer_report(t: &TransferReduction, min_delta_preserved: bool, samples: &[TransferSample], fmt: Format) -> String {
    let steps: Vec<Value> = t
        .steps
        .iter()
        .map(|s| json!({ "position": s.position, "multiplier": s.multiplier }))
        .collect();
    match fmt {
        Format::Text => {
            let mut out = format!("group {}\nG0  = {}\nG0* = {}\n", t.original.group(), t.original, t.reduced);
            if t.steps.is_empty() {
                out.push_str("already spans itself; identity map\n");
            }
            for s in &t.steps {
                let _ = writeln!(out, "step: position {} multiplied by {}", s.position, s.multiplier);
            }
            let _ = writeln!(out, "min Δ preserved: {min_delta_preserved}");
            for s in samples {
                let _ = writeln!(
                    out,
                    "{} -> {}  k = {}  {}",
                    s.sequence,
                    s.image,
                    ratio_string(&s.cross_number),
                    if s.preserved { "OK" } else { "FAIL" }
                );
            }
            out
        }
        Format::Json => pretty(&json!({
            "group": t.original.group().to_string(),
            "subset": coords(&t.original),
            "reduced": coords(&t.reduced),
            "steps": steps,
            "min_delta_preserved": min_delta_preserved,
            "samples": samples.iter().map(|s| json!({
                "sequence": s.sequence,
                "image": s.image,
                "cross_number": ratio_string(&s.cross_number),
                "preserved": s.preserved,
            })).collect::<Vec<_>>(),
        })),
        Format::Csv => csv_table(
            &["sequence", "image", "cross_number", "preserved"],
            samples.iter().map(|s| {
                vec![s.sequence.clone(), s.image.clone(), ratio_string(&s.cross_number), s.preserved.to_string()]
            }),
        ),
    }
}

pub fn verification_report(name: &str, v: &Verification, fmt: Format) -> String {
    match fmt {
        Format::Text => v.to_string(),
        Format::Json => pretty(&json!({
            "check": name,
            "ok": v.ok(),
            "lines": v.lines,
        })),
        Format::Csv => csv_table(
            &["subject", "claim", "ok"],
            v.lines.iter().map(|l| vec![l.subject.clone(), l.claim.clone(), l.ok.to_string()]),
        ),
    }
}
