//! Scan grids as CSV. Numbers are written with 17 significant digits, which
//! round-trips every `f64` exactly.

use std::io;

use barrow_core::harness::ScanRow;
use barrow_core::Region;

pub const HEADER: [&str; 12] = [
    "x", "y", "region", "R_A", "R_B", "R_C", "lp_a", "lp_b", "lp_c", "lhs", "rhs", "slack",
];

pub fn fmt_num(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn write_rows<W: io::Write>(out: W, rows: &[ScanRow]) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(HEADER)?;
    for r in rows {
        let nums = [r.r_a, r.r_b, r.r_c, r.lp_a, r.lp_b, r.lp_c, r.lhs, r.rhs, r.slack].map(fmt_num);
        w.write_record(
            [fmt_num(r.x), fmt_num(r.y), r.region.label().to_string()]
                .iter()
                .chain(nums.iter()),
        )?;
    }
    w.flush()?;
    Ok(())
}

/// Inverse of [`write_rows`].
pub fn read_rows<R: io::Read>(input: R) -> Result<Vec<ScanRow>, String> {
    let mut rd = csv::Reader::from_reader(input);
    let header = rd.headers().map_err(|e| e.to_string())?;
    if header.iter().ne(HEADER) {
        return Err(format!("unexpected header {header:?}"));
    }
    rd.records()
        .map(|rec| {
            let rec = rec.map_err(|e| e.to_string())?;
            let num = |i: usize| {
                rec[i]
                    .parse::<f64>()
                    .map_err(|_| format!("bad number {:?} in column {}", &rec[i], HEADER[i]))
            };
            Ok(ScanRow {
                x: num(0)?,
                y: num(1)?,
                region: rec[2].parse::<Region>().map_err(|e| e.to_string())?,
                r_a: num(3)?,
                r_b: num(4)?,
                r_c: num(5)?,
                lp_a: num(6)?,
                lp_b: num(7)?,
                lp_c: num(8)?,
                lhs: num(9)?,
                rhs: num(10)?,
                slack: num(11)?,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seventeen_significant_digits() {
        assert_eq!(fmt_num(1.0), "1.0000000000000000e0");
        assert_eq!(fmt_num(-0.1), "-1.0000000000000001e-1");
        for x in [1.0 / 3.0, 2f64.sqrt(), -1e-300, 5e-324, f64::MAX] {
            assert_eq!(fmt_num(x).parse::<f64>().unwrap(), x);
        }
    }
}
