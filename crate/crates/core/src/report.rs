//! Flat CSV and human-readable renderings of a [`BoundReport`].

use std::fmt::Write as _;

use crate::bounds::{BoundReport, Sharpness};
use crate::error::{Error, Result};
use crate::invariants::Regime;

pub const CSV_HEADER: [&str; 15] = [
    "d",
    "k",
    "regime",
    "n0",
    "eps",
    "theta0",
    "eps_prime",
    "pi",
    "xi",
    "bound",
    "capital_pi",
    "sharp",
    "ci_a",
    "ci_b",
    "residual_degree",
];

fn opt(v: Option<i64>) -> String {
    v.map(|v| v.to_string()).unwrap_or_default()
}

impl BoundReport {
    /// Fields in [`CSV_HEADER`] order. `eps_prime` is blank outside the small-degree regime.
    pub fn csv_fields(&self) -> Vec<String> {
        let inv = &self.invariants;
        vec![
            self.d.to_string(),
            self.k.to_string(),
            self.regime.label().to_owned(),
            inv.n0.to_string(),
            inv.eps.to_string(),
            inv.theta0.to_string(),
            opt(inv.eps_prime),
            self.pi_value.to_string(),
            self.xi_value.to_string(),
            self.bound_g_minus_1.to_string(),
            self.capital_pi.to_string(),
            self.sharp.label().to_owned(),
            self.linkage.ci_type.0.to_string(),
            self.linkage.ci_type.1.to_string(),
            self.linkage.residual_degree.to_string(),
        ]
    }

    pub fn csv_row(&self) -> String {
        self.csv_fields().join(",")
    }

    /// Multi-line summary for terminals.
    pub fn to_text(&self) -> String {
        let inv = &self.invariants;
        let mut out = String::new();
        let (a, b) = self.linkage.ci_type;
        let _ = writeln!(
            out,
            "curve degree d = {}, surface degree 2k = {} (k = {})",
            self.d,
            2 * self.k,
            self.k
        );
        let _ = match self.regime {
            Regime::LargeDegree => writeln!(out, "regime: large (d > 2k(k-1) = {})", 2 * self.k * (self.k - 1)),
            Regime::SmallDegree => writeln!(out, "regime: small (d <= 2k(k-1) = {})", 2 * self.k * (self.k - 1)),
        };
        let _ = write!(
            out,
            "invariants: n0 = {}, eps = {}, theta0 = {}",
            inv.n0, inv.eps, inv.theta0
        );
        if let Some(e) = inv.eps_prime {
            let _ = write!(out, ", eps' = {e}");
        }
        if let (Some(nu), Some(eh)) = (inv.nu, inv.eps_hat) {
            let _ = write!(out, ", nu = {nu}, eps^ = {eh}");
        }
        out.push('\n');
        let (pi_name, xi_name) = match self.regime {
            Regime::LargeDegree => ("pi", "xi"),
            Regime::SmallDegree => ("pi'", "xi'"),
        };
        let _ = writeln!(out, "{pi_name} = {}, {xi_name} = {}", self.pi_value, self.xi_value);
        let _ = writeln!(
            out,
            "bound: g - 1 <= {}  (g <= {})",
            self.bound_g_minus_1,
            self.bound_g_minus_1 + 1
        );
        let class = format!("class S({},{})", self.d, self.k);
        let _ = match self.sharp {
            Sharpness::SharpAttainedByS(_) => {
                writeln!(out, "sharpness: sharp; maximal genus attained exactly by {class}")
            }
            Sharpness::SharpPossiblyOther(_) => {
                writeln!(out, "sharpness: sharp; extremal curves not known to lie in {class}")
            }
            Sharpness::UnknownConjecturalPi(_) => writeln!(out, "sharpness: unknown"),
        };
        let _ = writeln!(
            out,
            "{class}: linked in a complete intersection of type ({a},{b}) to an ACM curve of degree {} on a quadric surface",
            self.linkage.residual_degree
        );
        match self.sharp {
            Sharpness::UnknownConjecturalPi(v) => {
                let _ = writeln!(out, "Pi (g - 1 of {class}) = {v}  [conjectured sharp]");
            }
            _ => {
                let _ = writeln!(out, "Pi (g - 1 of {class}) = {}", self.capital_pi);
            }
        }
        if let Some(v) = self.no_small_curve_bound {
            let _ = writeln!(
                out,
                "if the hyperplane section lies on no curve of type k-1: g - 1 <= {v}"
            );
        }
        out
    }
}

/// A parsed CSV row, every field typed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CsvRow {
    pub d: i64,
    pub k: i64,
    pub regime: Regime,
    pub n0: i64,
    pub eps: i64,
    pub theta0: i64,
    pub eps_prime: Option<i64>,
    pub pi: i64,
    pub xi: i64,
    pub bound: i64,
    pub capital_pi: i64,
    pub sharp: String,
    pub ci_a: i64,
    pub ci_b: i64,
    pub residual_degree: i64,
}

impl CsvRow {
    /// Parses the first [`CSV_HEADER`]`.len()` fields; extra trailing columns are ignored.
    pub fn parse<S: AsRef<str>>(fields: &[S]) -> Result<Self> {
        if fields.len() < CSV_HEADER.len() {
            return Err(Error::Parse(format!(
                "expected {} fields, got {}",
                CSV_HEADER.len(),
                fields.len()
            )));
        }
        let f = |i: usize| fields[i].as_ref().trim();
        let int = |i: usize| {
            f(i).parse::<i64>()
                .map_err(|e| Error::Parse(format!("{}: {:?}: {e}", CSV_HEADER[i], f(i))))
        };
        let sharp = f(11).to_owned();
        if !["sharp_attained_by_s", "sharp_possibly_other", "unknown_conjectural_pi"].contains(&sharp.as_str()) {
            return Err(Error::Parse(format!("unknown sharpness label {sharp:?}")));
        }
        Ok(Self {
            d: int(0)?,
            k: int(1)?,
            regime: f(2).parse()?,
            n0: int(3)?,
            eps: int(4)?,
            theta0: int(5)?,
            eps_prime: if f(6).is_empty() { None } else { Some(int(6)?) },
            pi: int(7)?,
            xi: int(8)?,
            bound: int(9)?,
            capital_pi: int(10)?,
            sharp,
            ci_a: int(12)?,
            ci_b: int(13)?,
            residual_degree: int(14)?,
        })
    }

    pub fn matches(&self, report: &BoundReport) -> bool {
        let inv = &report.invariants;
        self.d == report.d
            && self.k == report.k
            && self.regime == report.regime
            && self.n0 == inv.n0
            && self.eps == inv.eps
            && self.theta0 == inv.theta0
            && self.eps_prime == inv.eps_prime
            && self.pi == report.pi_value
            && self.xi == report.xi_value
            && self.bound == report.bound_g_minus_1
            && self.capital_pi == report.capital_pi
            && self.sharp == report.sharp.label()
            && (self.ci_a, self.ci_b) == report.linkage.ci_type
            && self.residual_degree == report.linkage.residual_degree
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::genus_bound;
    use crate::invariants::CurveParams;

    #[test]
    fn csv_row_for_15_3() {
        let r = genus_bound(CurveParams::new(15, 3).unwrap());
        assert_eq!(r.csv_row(), "15,3,large,3,3,3,,18,1,17,17,sharp_possibly_other,3,3,3");
    }

    #[test]
    fn csv_row_parses_back() {
        let r = genus_bound(CurveParams::new(12, 3).unwrap());
        let row = CsvRow::parse(&r.csv_fields()).unwrap();
        assert_eq!(row.eps_prime, Some(0));
        assert!(row.matches(&r));
        assert!(CsvRow::parse(&["1", "2"]).is_err());
    }

    #[test]
    fn text_mentions_class_and_bound() {
        let text = genus_bound(CurveParams::new(9, 2).unwrap()).to_text();
        assert!(text.contains("g - 1 <= 5"), "{text}");
        assert!(text.contains("class S(9,2)"));
        assert!(text.contains("type (2,3)"));
        assert!(text.contains("degree 3"));
        let text = genus_bound(CurveParams::new(27, 4).unwrap()).to_text();
        assert!(text.contains("conjectured sharp"), "{text}");
    }
}
