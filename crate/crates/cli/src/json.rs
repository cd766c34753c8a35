//! Wire formats.
//!
//! Complex numbers travel as two-element `[re, im]` arrays; matrices as
//! row-major four-element arrays of complex; points as objects keyed by
//! coordinate name. Parsing validates finiteness and the parameter ranges
//! of automorphisms.

use anyhow::{anyhow, bail, Result};
use serde_json::{json, Value};

use hexablock_core::auto::HexaAutomorphism;
use hexablock_core::hexa::{HexaPoint, HexaStratum};
use hexablock_core::mu::MuResult;
use hexablock_core::scalar::Matrix2;
use hexablock_core::tetra::{TetraClass, TetraPoint};
use hexablock_core::Complex;

pub fn complex_to_value(z: Complex) -> Value {
    json!([z.re, z.im])
}

pub fn complex_from_value(v: &Value) -> Result<Complex> {
    let arr = v.as_array().ok_or_else(|| anyhow!("expected [re, im], got {v}"))?;
    if arr.len() != 2 {
        bail!("expected a two-element [re, im] array, got {v}");
    }
    let re = arr[0].as_f64().ok_or_else(|| anyhow!("non-numeric real part in {v}"))?;
    let im = arr[1].as_f64().ok_or_else(|| anyhow!("non-numeric imaginary part in {v}"))?;
    if !re.is_finite() || !im.is_finite() {
        bail!("non-finite complex component in {v}");
    }
    Ok(Complex::new(re, im))
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| anyhow!("missing field \"{key}\""))
}

pub fn tetra_from_str(s: &str) -> Result<TetraPoint> {
    let v: Value = serde_json::from_str(s)?;
    tetra_from_value(&v)
}

pub fn tetra_from_value(v: &Value) -> Result<TetraPoint> {
    Ok(TetraPoint::new(
        complex_from_value(field(v, "x1")?)?,
        complex_from_value(field(v, "x2")?)?,
        complex_from_value(field(v, "x3")?)?,
    ))
}

pub fn tetra_to_value(x: &TetraPoint) -> Value {
    json!({
        "x1": complex_to_value(x.x1),
        "x2": complex_to_value(x.x2),
        "x3": complex_to_value(x.x3),
    })
}

pub fn hexa_from_str(s: &str) -> Result<HexaPoint> {
    let v: Value = serde_json::from_str(s)?;
    Ok(HexaPoint::new(complex_from_value(field(&v, "a")?)?, tetra_from_value(&v)?))
}

pub fn hexa_to_value(p: &HexaPoint) -> Value {
    json!({
        "a": complex_to_value(p.a),
        "x1": complex_to_value(p.x.x1),
        "x2": complex_to_value(p.x.x2),
        "x3": complex_to_value(p.x.x3),
    })
}

/// Row-major `[a11, a12, a21, a22]`, each entry `[re, im]`.
pub fn matrix_from_str(s: &str) -> Result<Matrix2> {
    let v: Value = serde_json::from_str(s)?;
    let arr = v.as_array().ok_or_else(|| anyhow!("expected a row-major 4-entry array"))?;
    if arr.len() != 4 {
        bail!("matrix needs exactly 4 entries, got {}", arr.len());
    }
    Ok(Matrix2::new(
        complex_from_value(&arr[0])?,
        complex_from_value(&arr[1])?,
        complex_from_value(&arr[2])?,
        complex_from_value(&arr[3])?,
    ))
}

pub fn matrix_to_value(m: &Matrix2) -> Value {
    Value::Array(m.entries().iter().map(|&e| complex_to_value(e)).collect())
}

pub fn automorphism_from_str(s: &str) -> Result<HexaAutomorphism> {
    let v: Value = serde_json::from_str(s)?;
    let flip = field(&v, "flip")?
        .as_bool()
        .ok_or_else(|| anyhow!("\"flip\" must be a boolean"))?;
    HexaAutomorphism::new(
        complex_from_value(field(&v, "xi1")?)?,
        complex_from_value(field(&v, "xi2")?)?,
        complex_from_value(field(&v, "z1")?)?,
        complex_from_value(field(&v, "z2")?)?,
        flip,
        complex_from_value(field(&v, "omega")?)?,
    )
    .map_err(|e| anyhow!("invalid automorphism parameters: {e}"))
}

pub fn automorphism_to_value(t: &HexaAutomorphism) -> Value {
    json!({
        "xi1": complex_to_value(t.xi1),
        "xi2": complex_to_value(t.xi2),
        "z1": complex_to_value(t.z1),
        "z2": complex_to_value(t.z2),
        "flip": t.flip,
        "omega": complex_to_value(t.omega),
    })
}

pub fn tetra_class_str(c: TetraClass) -> &'static str {
    match c {
        TetraClass::Interior => "interior",
        TetraClass::Boundary => "boundary",
        TetraClass::Distinguished => "distinguished",
        TetraClass::Exterior => "exterior",
    }
}

pub fn stratum_str(s: HexaStratum) -> &'static str {
    match s {
        HexaStratum::Interior => "interior",
        HexaStratum::Boundary1 => "b1",
        HexaStratum::Boundary2 => "b2",
        HexaStratum::Boundary3 => "b3",
        HexaStratum::Exterior => "exterior",
    }
}

pub fn mu_result_to_value(r: &MuResult) -> Value {
    json!({
        "value": r.value,
        "witness": r.witness.as_ref().map(matrix_to_value).unwrap_or(Value::Null),
        "residual": r.residual,
        "warning": r.warning,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_round_trip() {
        let z = Complex::new(0.25, -1.5);
        let v = complex_to_value(z);
        assert_eq!(complex_from_value(&v).unwrap(), z);
    }

    #[test]
    fn rejects_malformed_points() {
        assert!(tetra_from_str("{\"x1\": [0, 0]}").is_err());
        assert!(tetra_from_str("not json").is_err());
        assert!(hexa_from_str("{\"a\": [0, 0], \"x1\": [0], \"x2\": [0,0], \"x3\": [0,0]}").is_err());
        assert!(matrix_from_str("[[0,0],[0,0],[0,0]]").is_err());
    }

    #[test]
    fn point_round_trip() {
        let p = HexaPoint::from_coords(
            Complex::new(0.1, 0.2),
            Complex::new(-0.3, 0.0),
            Complex::new(0.0, 0.4),
            Complex::new(0.5, -0.6),
        );
        let s = hexa_to_value(&p).to_string();
        let q = hexa_from_str(&s).unwrap();
        assert_eq!(p, q);
    }
}
