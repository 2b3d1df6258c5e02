//! JSON views of library objects. Exact values are always strings;
//! floating-point values are rounded to a fixed number of significant
//! digits so that identical inputs give byte-identical output.

use num_bigint::BigInt;
use serde::Serialize;

use crate::arith::intmath::squarefree_kernel;
use crate::arith::numfield::{NumberField, NumberFieldElement};
use crate::arith::rational::{big, rat, to_pq, Rational};
use crate::error::{Error, Result};
use crate::forms::SpaceBasis;
use crate::hecke::{Eigenform, HeckeMatrix};
use crate::identities::{EigenDecomposition, NonvanishingEntry};
use crate::qseries::QSeries;

/// Significant digits kept for floats in JSON output.
pub const FLOAT_DIGITS: usize = 15;

/// `x` rounded to [`FLOAT_DIGITS`] significant digits.
pub fn round_float(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{:.*e}", FLOAT_DIGITS - 1, x).parse().unwrap_or(x)
}

/// Rounds every float in a JSON tree in place.
pub fn round_floats(v: &mut serde_json::Value) {
    match v {
        serde_json::Value::Number(n) if n.is_f64() => {
            if let Some(x) = n.as_f64() {
                if let Some(m) = serde_json::Number::from_f64(round_float(x)) {
                    *n = m;
                }
            }
        }
        serde_json::Value::Array(a) => a.iter_mut().for_each(round_floats),
        serde_json::Value::Object(o) => o.values_mut().for_each(round_floats),
        _ => {}
    }
}

/// Serializes with rounded floats; non-finite floats become `null`.
pub fn to_json<T: Serialize>(x: &T) -> Result<serde_json::Value> {
    let mut v = serde_json::to_value(x).map_err(|e| Error::Parse(e.to_string()))?;
    round_floats(&mut v);
    Ok(v)
}

pub fn to_json_string<T: Serialize>(x: &T) -> Result<String> {
    serde_json::to_string_pretty(&to_json(x)?).map_err(|e| Error::Parse(e.to_string()))
}

pub fn rational_series(s: &QSeries<Rational>) -> Vec<String> {
    s.coeffs().iter().map(to_pq).collect()
}

/// `Q(sqrt D)` model of a quadratic field: the generator is sent to
/// `centre + half_width * sqrt(D)`, the larger real root when `D > 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SqrtModel {
    pub d: BigInt,
    pub centre: Rational,
    pub half_width: Rational,
}

impl SqrtModel {
    pub fn new(field: &NumberField) -> Result<Self> {
        if field.degree() != 2 {
            return Err(Error::Unsupported(format!("degree-{} field has no sqrt model", field.degree())));
        }
        let m = field.modulus();
        let disc = m.discriminant()?;
        // disc = n/d with d a square for a monic rational quadratic, up to
        // clearing: multiply through by den^2
        let den = disc.denom().clone();
        let scaled = disc.numer() * &den;
        let ker = squarefree_kernel(&scaled)?;
        if !ker.complete {
            return Err(Error::Unsupported("could not factor the discriminant".into()));
        }
        let s = big(ker.square_root_part.clone()) / big(den);
        Ok(SqrtModel { d: ker.squarefree, centre: -m.coeff(1) * rat(1, 2), half_width: s * rat(1, 2) })
    }

    /// `(a, b)` with `x = a + b sqrt(D)`.
    pub fn coords(&self, x: &NumberFieldElement) -> (Rational, Rational) {
        let c = x.coords();
        let (x0, x1) = (c[0].clone(), c.get(1).cloned().unwrap_or_else(|| rat(0, 1)));
        (&x0 + &x1 * &self.centre, &x1 * &self.half_width)
    }

    /// `a + b sqrt(D)` written as text; a pure `b sqrt(D)` is written as
    /// `(b D)/sqrt(D)`.
    pub fn render(&self, x: &NumberFieldElement) -> String {
        let (a, b) = self.coords(x);
        let zero = rat(0, 1);
        if a == zero && b != zero {
            return format!("({})/sqrt({})", to_pq(&(&b * big(self.d.clone()))), self.d);
        }
        if b == zero {
            return to_pq(&a);
        }
        format!("{} + ({})*sqrt({})", to_pq(&a), to_pq(&b), self.d)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct FieldJson {
    /// Defining polynomial, constant term first.
    pub modulus: Vec<String>,
    pub degree: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sqrt_of: Option<String>,
}

impl FieldJson {
    pub fn new(field: &NumberField) -> Self {
        let sqrt_of = SqrtModel::new(field).ok().map(|m| m.d.to_string());
        FieldJson { modulus: field.modulus().to_strings(), degree: field.degree(), sqrt_of }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct BasisJson {
    pub weight: u32,
    pub cusp_only: bool,
    pub dim: usize,
    pub precision: usize,
    pub forms: Vec<Vec<String>>,
}

impl BasisJson {
    pub fn new(b: &SpaceBasis) -> Self {
        BasisJson {
            weight: b.weight,
            cusp_only: b.cusp_only,
            dim: b.dim(),
            precision: b.prec(),
            forms: b.forms.iter().map(rational_series).collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct HeckeJson {
    pub n: u64,
    pub weight: u32,
    pub dim: usize,
    /// Column `j` holds the coordinates of `T_n` applied to basis form `j`.
    pub matrix: Vec<Vec<String>>,
    pub charpoly: Vec<String>,
}

impl HeckeJson {
    pub fn new(m: &HeckeMatrix) -> Self {
        HeckeJson {
            n: m.n,
            weight: m.weight,
            dim: m.dim(),
            matrix: m.matrix.to_rows().iter().map(|r| r.iter().map(to_pq).collect()).collect(),
            charpoly: m.charpoly().to_strings(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct EigenformJson {
    pub weight: u32,
    pub hecke_index: u64,
    pub field: FieldJson,
    /// Coefficients in the power basis of the field.
    pub coefficients: Vec<Vec<String>>,
}

impl EigenformJson {
    pub fn new(f: &Eigenform) -> Self {
        EigenformJson {
            weight: f.weight,
            hecke_index: f.hecke_index,
            field: FieldJson::new(&f.field),
            coefficients: f.series.coeffs().iter().map(|c| c.coord_strings()).collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct DecompositionJson {
    pub source: String,
    pub weight: u32,
    pub f_field: FieldJson,
    pub g_field: FieldJson,
    /// `c` in `F1 (x) F2`: entry `i` is the `F2`-coefficient of the `i`-th
    /// power of the generator of `F1`.
    pub coefficient: Vec<Vec<String>>,
    /// The `c_i` written with square roots, when `F1 = Q` and `F2` is quadratic.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub c_values: Option<Vec<String>>,
    pub coefficient_matrix: Vec<Vec<String>>,
    pub determinant: String,
    pub norm: String,
    pub all_nonzero: bool,
    pub numeric: Vec<NonvanishingEntry>,
    pub verified_to: usize,
}

impl DecompositionJson {
    pub fn new(dec: &EigenDecomposition, numeric: Vec<NonvanishingEntry>) -> Self {
        let c_values = dec.coefficient_in_f2().and_then(|c| {
            let model = SqrtModel::new(&dec.eigenform.field).ok()?;
            let conj = c.quadratic_conjugate().ok()?;
            Some(vec![model.render(&c), model.render(&conj)])
        });
        DecompositionJson {
            source: dec.source.clone(),
            weight: dec.weight,
            f_field: FieldJson::new(&dec.f_field),
            g_field: FieldJson::new(&dec.eigenform.field),
            coefficient: dec.coefficient.parts().iter().map(|p| p.coord_strings()).collect(),
            c_values,
            coefficient_matrix: dec
                .coefficient_matrix
                .to_rows()
                .iter()
                .map(|r| r.iter().map(to_pq).collect())
                .collect(),
            determinant: to_pq(&dec.determinant),
            norm: to_pq(&dec.norm()),
            all_nonzero: dec.all_nonzero(),
            numeric,
            verified_to: dec.verified_to,
        }
    }
}
