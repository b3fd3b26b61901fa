//! CSV emission. Floats are written as `{:.16e}`: 17 significant digits,
//! enough to round-trip any `f64`, with a `.` separator regardless of locale.

use std::io::{self, Write};

use oqs_market::dynamics::Trajectory;
use oqs_market::scenarios::SweepRow;

pub const TRAJECTORY_HEADER: &str =
    "step,t,mean,second_moment,variance,excess_kurtosis,vn_entropy,trace_error,min_eig";
pub const SWEEP_HEADER: &str =
    "value,H_initial,H_final,entropy_gain,variance_final,excess_kurtosis_final";
pub const DISTRIBUTION_HEADER: &str = "i,x_i,p_i";

pub fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}

fn join(fields: &[f64]) -> String {
    fields
        .iter()
        .map(|&v| fmt_f64(v))
        .collect::<Vec<_>>()
        .join(",")
}

pub fn write_trajectory<W: Write + ?Sized>(w: &mut W, tr: &Trajectory<f64>) -> io::Result<()> {
    writeln!(w, "{TRAJECTORY_HEADER}")?;
    for c in &tr.checkpoints {
        let rest = join(&[
            c.t,
            c.mean,
            c.second_moment,
            c.variance,
            c.excess_kurtosis,
            c.vn_entropy,
            c.trace_error,
            c.min_eig,
        ]);
        writeln!(w, "{},{rest}", c.step)?;
    }
    Ok(())
}

pub fn write_sweep<W: Write + ?Sized>(w: &mut W, rows: &[SweepRow<f64>]) -> io::Result<()> {
    writeln!(w, "{SWEEP_HEADER}")?;
    for r in rows {
        let line = join(&[
            r.value,
            r.initial_entropy,
            r.final_entropy,
            r.entropy_gain,
            r.final_variance,
            r.final_kurtosis,
        ]);
        writeln!(w, "{line}")?;
    }
    Ok(())
}

/// Rows `i,x_i,p_i` with `i` counted from one.
pub fn write_distribution<W: Write + ?Sized>(w: &mut W, x: &[f64], p: &[f64]) -> io::Result<()> {
    writeln!(w, "{DISTRIBUTION_HEADER}")?;
    for (i, (&xi, &pi)) in x.iter().zip(p).enumerate() {
        writeln!(w, "{},{},{}", i + 1, fmt_f64(xi), fmt_f64(pi))?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floats_round_trip() {
        for v in [0.1, 1.0 / 3.0, -2.5e-300, 8.25e-4, f64::MAX] {
            let s = fmt_f64(v);
            assert_eq!(s.parse::<f64>().unwrap(), v, "{s}");
        }
        assert_eq!(fmt_f64(0.5), "5.0000000000000000e-1");
    }

    #[test]
    fn distribution_is_one_based() {
        let mut out = Vec::new();
        write_distribution(&mut out, &[-1.0, 1.0], &[0.25, 0.75]).unwrap();
        let text = String::from_utf8(out).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], DISTRIBUTION_HEADER);
        assert!(lines[1].starts_with("1,"));
        assert!(lines[2].starts_with("2,"));
    }
}
