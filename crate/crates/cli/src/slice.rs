//! Grid export over 2-planes through `R^4 ≅ (a, x1, x2, x3)` real parts and
//! imaginary parts, for external plotting.

use std::io::Write;

use anyhow::{bail, Result};

use hexablock_core::hexa::{e_minus_u, HexaPoint};
use hexablock_core::Complex;

use crate::json::stratum_str;

/// One of the eight real coordinate axes of `C^4`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    ARe,
    AIm,
    X1Re,
    X1Im,
    X2Re,
    X2Im,
    X3Re,
    X3Im,
}

impl Axis {
    pub fn parse(s: &str) -> Result<Axis> {
        Ok(match s {
            "a_re" => Axis::ARe,
            "a_im" => Axis::AIm,
            "x1_re" => Axis::X1Re,
            "x1_im" => Axis::X1Im,
            "x2_re" => Axis::X2Re,
            "x2_im" => Axis::X2Im,
            "x3_re" => Axis::X3Re,
            "x3_im" => Axis::X3Im,
            _ => bail!(
                "unknown axis \"{s}\" (expected one of a_re a_im x1_re x1_im x2_re x2_im x3_re x3_im)"
            ),
        })
    }

    fn set(self, p: &mut [f64; 8], value: f64) {
        p[self as usize] = value;
    }
}

fn point_from_reals(p: &[f64; 8]) -> HexaPoint {
    HexaPoint::from_coords(
        Complex::new(p[0], p[1]),
        Complex::new(p[2], p[3]),
        Complex::new(p[4], p[5]),
        Complex::new(p[6], p[7]),
    )
}

/// Write the `resolution × resolution` grid over `[-half, half]²` in the
/// two chosen axes (all other coordinates at the base point) as CSV rows
/// `s,t,member,stratum,e_minus_u`. The fiber-radius field is empty wherever
/// the base point leaves the tetrablock.
pub fn write_slice(
    out: &mut dyn Write,
    axes: (Axis, Axis),
    base: &HexaPoint,
    resolution: usize,
    half: f64,
    eps: f64,
) -> Result<()> {
    if resolution < 16 {
        bail!("resolution must be at least 16");
    }
    writeln!(out, "s,t,member,stratum,e_minus_u")?;
    let coord = |i: usize| -half + 2.0 * half * i as f64 / (resolution - 1) as f64;
    let base_reals = [
        base.a.re, base.a.im, base.x.x1.re, base.x.x1.im, base.x.x2.re, base.x.x2.im,
        base.x.x3.re, base.x.x3.im,
    ];
    for i in 0..resolution {
        for j in 0..resolution {
            let (s, t) = (coord(i), coord(j));
            let mut reals = base_reals;
            axes.0.set(&mut reals, s);
            axes.1.set(&mut reals, t);
            let p = point_from_reals(&reals);
            let member = p.is_member();
            let stratum = stratum_str(p.stratify(eps));
            let fiber = if p.x.is_member() {
                e_minus_u(&p.x).map(|v| format!("{v}")).unwrap_or_default()
            } else {
                String::new()
            };
            writeln!(out, "{s},{t},{member},{stratum},{fiber}")?;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn row_count_matches_resolution() {
        let mut buf = Vec::new();
        let base = HexaPoint::from_coords(
            Complex::new(0.0, 0.0),
            Complex::new(0.0, 0.0),
            Complex::new(0.0, 0.0),
            Complex::new(0.0, 0.0),
        );
        write_slice(&mut buf, (Axis::ARe, Axis::X3Re), &base, 16, 1.2, 1e-9).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().count(), 16 * 16 + 1);
    }

    #[test]
    fn members_have_fiber_room() {
        let mut buf = Vec::new();
        let base = HexaPoint::from_coords(
            Complex::new(0.0, 0.0),
            Complex::new(0.0, 0.0),
            Complex::new(0.0, 0.0),
            Complex::new(0.0, 0.0),
        );
        write_slice(&mut buf, (Axis::ARe, Axis::X3Re), &base, 17, 1.2, 1e-9).unwrap();
        let text = String::from_utf8(buf).unwrap();
        for line in text.lines().skip(1) {
            let cols: Vec<&str> = line.split(',').collect();
            let s: f64 = cols[0].parse().unwrap();
            let member = cols[2] == "true";
            if member {
                let radius_sq: f64 = cols[4].parse().unwrap();
                assert!(radius_sq > s * s);
            }
        }
        // The a = 0 row is a member exactly for |x3| < 1 (axis points).
        let zero_rows: Vec<&str> = text
            .lines()
            .skip(1)
            .filter(|l| l.starts_with("0,") || l.starts_with("-0,"))
            .collect();
        assert!(!zero_rows.is_empty());
        for line in zero_rows {
            let cols: Vec<&str> = line.split(',').collect();
            let t: f64 = cols[1].parse().unwrap();
            assert_eq!(cols[2] == "true", t.abs() < 1.0);
        }
    }
}
