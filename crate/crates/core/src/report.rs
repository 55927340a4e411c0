//! CSV serialization of experiment results.
//!
//! Numbers use Rust's shortest round-trip formatting, so output does not
//! depend on locale and identical inputs give identical bytes.

use std::io::Write;

use crate::analysis::{BoundReport, ErrorCurve};
use crate::error::Result;
use crate::operators::SampleRow;

/// A header plus rows of already formatted cells.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new<S: Into<String>>(header: impl IntoIterator<Item = S>) -> Self {
        Self {
            header: header.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push<S: ToString>(&mut self, row: impl IntoIterator<Item = S>) {
        self.rows.push(row.into_iter().map(|c| c.to_string()).collect());
    }

    pub fn write<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(&self.header)?;
        for r in &self.rows {
            w.write_record(r)?;
        }
        w.flush()?;
        Ok(())
    }
}

fn opt(v: Option<f64>) -> String {
    v.map_or_else(String::new, |x| x.to_string())
}

/// One row per `(n, error kind)`.
pub fn error_curve_table(curve: &ErrorCurve) -> Table {
    let mut t = Table::new(["phi", "kernel", "f", "n", "error_kind", "value", "lambda"]);
    for (i, &n) in curve.ns.iter().enumerate() {
        t.push([
            curve.phi.clone(),
            curve.kernel.clone(),
            curve.f.clone(),
            n.to_string(),
            "luxemburg".into(),
            curve.lux_errors[i].to_string(),
            String::new(),
        ]);
        t.push([
            curve.phi.clone(),
            curve.kernel.clone(),
            curve.f.clone(),
            n.to_string(),
            "modular".into(),
            curve.modular_errors[i].to_string(),
            curve.lambda.to_string(),
        ]);
    }
    t
}

pub fn bound_table(reports: &[BoundReport]) -> Table {
    let mut t = Table::new(["kind", "lhs", "rhs", "ratio", "pass", "params"]);
    for r in reports {
        t.push([
            r.kind.to_string(),
            r.lhs.to_string(),
            r.rhs.to_string(),
            r.ratio.to_string(),
            r.pass.to_string(),
            r.params.to_string(),
        ]);
    }
    t
}

pub fn sample_table(rows: &[SampleRow]) -> Table {
    let mut t = Table::new(["x", "f", "kn_f", "dkn_f"]);
    for r in rows {
        t.push([r.x.to_string(), r.f.to_string(), r.kn.to_string(), opt(r.dkn)]);
    }
    t
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orlicz::ModularValue;

    #[test]
    fn curve_rows_per_n_and_kind() {
        let c = ErrorCurve {
            phi: "power:p=2".into(),
            kernel: "ramp".into(),
            f: "sin".into(),
            ns: vec![4, 8],
            lux_errors: vec![0.5, 0.25],
            modular_errors: vec![ModularValue::finite(0.1), ModularValue::Infinite { refinements: 3 }],
            lambda: 1.0,
            fit: None,
        };
        let mut buf = Vec::new();
        error_curve_table(&c).write(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "phi,kernel,f,n,error_kind,value,lambda");
        assert_eq!(lines.len(), 5);
        assert_eq!(lines[4], "power:p=2,ramp,sin,8,modular,inf,1");
    }

    #[test]
    fn cells_with_commas_are_quoted() {
        let mut t = Table::new(["a"]);
        t.push(["zygmund:beta=2,gamma=1"]);
        let mut buf = Vec::new();
        t.write(&mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "a\n\"zygmund:beta=2,gamma=1\"\n");
    }
}
