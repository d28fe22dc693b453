//! CSV plot data with fixed 17-significant-digit formatting.

use std::fmt::Write;

use crate::harness::{InequalityReport, SweepTable};

fn num(x: f64) -> String {
    format!("{x:.16e}")
}

/// One line per `ε` and orientation.
pub fn sweep_csv(tables: &[SweepTable]) -> String {
    let mut s = String::from("theorem,orientation,eps,i1,i1_error,i2,i2_error,quotient,quotient_error,j1,j1_error,j1_exact\n");
    for t in tables {
        for r in &t.rows {
            let _ = writeln!(
                s,
                "{},{},{},{},{},{},{},{},{},{},{},{}",
                t.theorem,
                t.orientation,
                num(r.eps),
                num(r.i1),
                num(r.i1_error),
                num(r.i2),
                num(r.i2_error),
                num(r.quotient),
                num(r.quotient_error),
                num(r.j1),
                num(r.j1_error),
                r.j1_exact.map(num).unwrap_or_default()
            );
        }
    }
    s
}

/// One line per term of every report.
pub fn terms_csv(reports: &[InequalityReport]) -> String {
    let mut s = String::from("index,theorem,function,side,term,coefficient,integral,error,value\n");
    for (i, r) in reports.iter().enumerate() {
        for (side, terms) in [("lhs", &r.lhs), ("rhs", &r.rhs)] {
            for t in terms.iter() {
                let _ = writeln!(
                    s,
                    "{i},{},\"{}\",{side},\"{}\",{},{},{},{}",
                    r.theorem,
                    r.function,
                    t.name,
                    num(t.coefficient),
                    num(t.integral),
                    num(t.error),
                    num(t.value)
                );
            }
        }
    }
    s
}
