//! Gram-matrix export: CSV for numerics and a plain 8-bit PGM heatmap
//! for quick visual inspection.

use std::fmt::Write as _;

use crate::embedding::GramMatrix;
use crate::error::{Error, Result};

/// Renders a Gram matrix as CSV. The first row and column carry the
/// state labels; entries use full `f64` round-trip precision.
pub fn gram_to_csv(gram: &GramMatrix) -> String {
    let n = gram.n();
    let mut out = String::new();
    out.push_str("label");
    for label in &gram.ordering {
        let _ = write!(out, ",{label}");
    }
    out.push('\n');
    for i in 0..n {
        out.push_str(&gram.ordering[i]);
        for j in 0..n {
            let _ = write!(out, ",{}", gram.get(i, j));
        }
        out.push('\n');
    }
    out
}

/// Renders a Gram matrix as a binary 8-bit PGM (`P5`) heatmap, one pixel
/// per entry, mapping overlap 0.0 to black and 1.0 to white. Entries are
/// clamped to `[0, 1]` before quantization.
pub fn gram_to_pgm(gram: &GramMatrix) -> Result<Vec<u8>> {
    let n = gram.n();
    if n == 0 {
        return Err(Error::invalid("gram_to_pgm: empty matrix"));
    }
    let mut out = format!("P5\n{n} {n}\n255\n").into_bytes();
    for i in 0..n {
        for j in 0..n {
            let v = gram.get(i, j).clamp(0.0, 1.0);
            out.push((v * 255.0).round() as u8);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> GramMatrix {
        GramMatrix {
            entries: vec![vec![1.0, 0.25], vec![0.25, 1.0]],
            ordering: vec!["a".into(), "b".into()],
        }
    }

    #[test]
    fn csv_round_trips_values() {
        let csv = gram_to_csv(&sample());
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some("label,a,b"));
        let row: Vec<&str> = lines.next().unwrap().split(',').collect();
        assert_eq!(row[0], "a");
        assert_eq!(row[1].parse::<f64>().unwrap(), 1.0);
        assert_eq!(row[2].parse::<f64>().unwrap(), 0.25);
    }

    #[test]
    fn pgm_header_and_pixels() {
        let pgm = gram_to_pgm(&sample()).unwrap();
        let header = b"P5\n2 2\n255\n";
        assert_eq!(&pgm[..header.len()], header);
        let pixels = &pgm[header.len()..];
        assert_eq!(pixels, &[255, 64, 64, 255]);
    }

    #[test]
    fn pgm_clamps_out_of_range() {
        let g = GramMatrix {
            entries: vec![vec![1.3, -0.2], vec![0.0, 1.0]],
            ordering: vec!["x".into(), "y".into()],
        };
        let pgm = gram_to_pgm(&g).unwrap();
        let pixels = &pgm[pgm.len() - 4..];
        assert_eq!(pixels, &[255, 0, 0, 255]);
        let empty = GramMatrix { entries: vec![], ordering: vec![] };
        assert!(gram_to_pgm(&empty).is_err());
    }
}
