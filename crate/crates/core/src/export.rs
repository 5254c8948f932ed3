//! Text serialization of lattices, spectra, states and fields.
//!
//! Floats are written with 12 significant digits, in lowercase scientific
//! notation when `|x| < 1e-4`, with trailing zeros dropped. Identical input
//! gives byte-identical output.

use num_complex::Complex64;
use serde::Serialize;
use serde_json::{json, Value};

use crate::lattice::TrianguleneLattice;
use crate::oracle::ChainSpectrum;
use crate::spectrum::{index_set, PointClass, SpectrumTable};
use crate::states::ExtendedField;

pub const SIGNIFICANT_DIGITS: usize = 12;

fn trim_mantissa(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

pub fn format_float(x: f64) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    if x == 0.0 {
        return "0".to_string();
    }
    if x.abs() < 1e-4 {
        let s = format!("{:.*e}", SIGNIFICANT_DIGITS - 1, x);
        let (mantissa, exp) = s.split_once('e').expect("scientific format has an exponent");
        return format!("{}e{}", trim_mantissa(mantissa), exp);
    }
    let magnitude = x.abs().log10().floor() as i64;
    let decimals = (SIGNIFICANT_DIGITS as i64 - 1 - magnitude).max(0) as usize;
    let s = format!("{:.*}", decimals, x);
    let t = trim_mantissa(&s);
    if t == "-0" {
        "0".to_string()
    } else {
        t.to_string()
    }
}

/// `x` rounded to 12 significant digits, for JSON numbers.
pub fn round_sig(x: f64) -> f64 {
    if x.is_finite() {
        format_float(x).parse().expect("formatted float parses")
    } else {
        x
    }
}

/// `serialize_with` helper applying [`round_sig`].
pub fn serialize_rounded<S: serde::Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_f64(round_sig(*x))
}

fn num(x: f64) -> Value {
    serde_json::Number::from_f64(round_sig(x)).map(Value::Number).unwrap_or(Value::Null)
}

fn to_string<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values serialize");
    s.push('\n');
    s
}

pub fn lattice_json(lattice: &TrianguleneLattice) -> String {
    let sites: Vec<Value> = lattice
        .sites()
        .iter()
        .zip(lattice.positions())
        .map(|(s, p)| json!({"sub": s.sublattice.as_str(), "n1": s.n1, "n2": s.n2, "x": num(p[0]), "y": num(p[1])}))
        .collect();
    let bonds: Vec<[usize; 2]> = lattice.bonds().iter().map(|&(i, j)| [i, j]).collect();
    to_string(&json!({"N": lattice.size(), "sites": sites, "bonds": bonds}))
}

pub fn spectrum_json(table: &SpectrumTable) -> String {
    let entries: Vec<Value> = table
        .entries
        .iter()
        .map(|e| {
            let labels: Vec<String> = e.labels.iter().map(|l| l.to_string()).collect();
            json!({"E": num(e.energy), "mult": e.multiplicity, "labels": labels})
        })
        .collect();
    to_string(&json!({"N": table.n, "entries": entries}))
}

/// One row per quantized point: `q,p,class,E_plus`.
pub fn spectrum_csv(n: usize) -> String {
    let mut out = String::from("q,p,class,E_plus\n");
    for pt in index_set(n) {
        let class = match pt.class {
            PointClass::Interior => "interior",
            PointClass::Axial => "axial",
        };
        out.push_str(&format!("{},{},{},{}\n", pt.q, pt.p, class, format_float(pt.energy(n))));
    }
    out
}

/// A labelled amplitude vector over the billiard sites.
#[derive(Debug, Clone)]
pub struct NamedState {
    pub label: String,
    pub energy: f64,
    pub amplitudes: Vec<Complex64>,
}

pub fn states_csv(lattice: &TrianguleneLattice, states: &[NamedState]) -> String {
    let mut out = String::from("label,sub,n1,n2,x,y,re,im\n");
    for st in states {
        for ((s, p), a) in lattice.sites().iter().zip(lattice.positions()).zip(&st.amplitudes) {
            out.push_str(&format!(
                "\"{}\",{},{},{},{},{},{},{}\n",
                st.label,
                s.sublattice.as_str(),
                s.n1,
                s.n2,
                format_float(p[0]),
                format_float(p[1]),
                format_float(a.re),
                format_float(a.im)
            ));
        }
    }
    out
}

pub fn states_json(lattice: &TrianguleneLattice, states: &[NamedState]) -> String {
    let list: Vec<Value> = states
        .iter()
        .map(|st| {
            let amps: Vec<Value> = lattice
                .sites()
                .iter()
                .zip(lattice.positions())
                .zip(&st.amplitudes)
                .map(|((s, p), a)| {
                    json!({
                        "sub": s.sublattice.as_str(), "n1": s.n1, "n2": s.n2,
                        "x": num(p[0]), "y": num(p[1]), "re": num(a.re), "im": num(a.im)
                    })
                })
                .collect();
            json!({"label": st.label, "E": num(st.energy), "amplitudes": amps})
        })
        .collect();
    to_string(&json!({"N": lattice.size(), "states": list}))
}

pub fn field_csv(field: &ExtendedField) -> String {
    let mut out = String::from("sub,n1,n2,x,y,value,nodal\n");
    for (s, v) in field.sites.iter().zip(&field.values) {
        let p = s.position();
        out.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            s.sublattice.as_str(),
            s.n1,
            s.n2,
            format_float(p[0]),
            format_float(p[1]),
            format_float(*v),
            u8::from(s.is_nodal(field.n))
        ));
    }
    out
}

pub fn field_json(field: &ExtendedField, label: &str) -> String {
    let sites: Vec<Value> = field
        .sites
        .iter()
        .zip(&field.values)
        .map(|(s, v)| {
            let p = s.position();
            json!({
                "sub": s.sublattice.as_str(), "n1": s.n1, "n2": s.n2,
                "x": num(p[0]), "y": num(p[1]), "value": num(*v), "nodal": s.is_nodal(field.n)
            })
        })
        .collect();
    to_string(&json!({"N": field.n, "label": label, "E": num(field.energy), "sites": sites}))
}

pub fn chain_csv(chain: &ChainSpectrum, oracle: &[f64]) -> String {
    let mut out = String::from("index,E_closed,E_oracle\n");
    for (i, (c, o)) in chain.values.iter().zip(oracle).enumerate() {
        out.push_str(&format!("{},{},{}\n", i + 1, format_float(*c), format_float(*o)));
    }
    out
}

pub fn chain_json(chain: &ChainSpectrum, oracle: &[f64], max_deviation: f64) -> String {
    let closed: Vec<Value> = chain.values.iter().map(|&v| num(v)).collect();
    let numeric: Vec<Value> = oracle.iter().map(|&v| num(v)).collect();
    to_string(&json!({
        "M": chain.values.len(), "closed_form": closed, "oracle": numeric, "max_deviation": num(max_deviation)
    }))
}

/// `kx,ky,E` rows of a dispersion grid.
pub fn dispersion_csv(grid: &[[f64; 3]]) -> String {
    let mut out = String::from("kx,ky,E\n");
    for [kx, ky, e] in grid {
        out.push_str(&format!("{},{},{}\n", format_float(*kx), format_float(*ky), format_float(*e)));
    }
    out
}

pub fn json_value<T: Serialize>(v: &T) -> String {
    to_string(v)
}
