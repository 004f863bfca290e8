//! Closed-form size bounds for universal sets and cover-free families.
//!
//! Every unbased `log` is base 2; `ln` is only used by the union bound.
//! Fields whose source formula hides an `o(d)`, `o(1)`, `Θ` or `Ω` term are
//! reported at leading order and flagged as asymptotic.

use crate::combin::binomial;
use crate::error::{Error, Result};
use crate::matrix::{CffSpec, UniversalSpec};

/// Base of every unqualified logarithm in a report.
pub const LOG_BASE: u32 = 2;

/// Binary entropy `-x log2 x - (1-x) log2 (1-x)`, with `H(0) = H(1) = 0`.
pub fn binary_entropy(x: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::Domain(format!("binary entropy needs 0 <= x <= 1, got {x}")));
    }
    let term = |p: f64| if p == 0.0 { 0.0 } else { -p * p.log2() };
    Ok(term(x) + term(1.0 - x))
}

/// `d C(d,r) / log2 C(d,r)` with `d = r + s`.
pub fn nrs(r: usize, s: usize) -> Result<f64> {
    let d = r + s;
    let c = binomial(d as u64, r as u64)
        .ok_or_else(|| Error::Domain(format!("C({d},{r}) overflows")))?;
    if c < 2 {
        return Err(Error::Domain(format!(
            "N(r,s) needs C(d,r) >= 2 so that log2 C(d,r) > 0; got C({d},{r}) = {c}"
        )));
    }
    let c = c as f64;
    Ok(d as f64 * c / c.log2())
}

/// `d q^d (ln(n/d) + ln q)`.
pub fn union_bound(spec: UniversalSpec) -> f64 {
    let (n, d, q) = (spec.n() as f64, spec.d() as f64, spec.q() as f64);
    d * q.powf(d) * ((n / d).ln() + q.ln())
}

/// Report fields, named as they are printed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BoundField {
    UnionBound,
    KleitmanReference,
    Nrs,
    Dyachkov,
    EntropyForm,
    Theorem1Target,
    BshoutyBaseline,
}

impl BoundField {
    pub const ALL: [BoundField; 7] = [
        BoundField::UnionBound,
        BoundField::KleitmanReference,
        BoundField::Nrs,
        BoundField::Dyachkov,
        BoundField::EntropyForm,
        BoundField::Theorem1Target,
        BoundField::BshoutyBaseline,
    ];

    pub fn name(self) -> &'static str {
        match self {
            BoundField::UnionBound => "union_bound",
            BoundField::KleitmanReference => "kleitman_reference",
            BoundField::Nrs => "nrs",
            BoundField::Dyachkov => "dyachkov",
            BoundField::EntropyForm => "entropy_form",
            BoundField::Theorem1Target => "theorem1_target",
            BoundField::BshoutyBaseline => "bshouty_baseline",
        }
    }

    /// Only the leading order of the source formula is computed.
    pub fn is_asymptotic(self) -> bool {
        matches!(
            self,
            BoundField::KleitmanReference
                | BoundField::Dyachkov
                | BoundField::EntropyForm
                | BoundField::Theorem1Target
        )
    }
}

/// Bounds evaluated at one parameter point. Absent fields do not apply to
/// the requested kind of object (or alphabet).
#[derive(Debug, Clone, Default, PartialEq)]
pub struct BoundsReport {
    pub union_bound: Option<f64>,
    pub kleitman_reference: Option<f64>,
    pub nrs: Option<f64>,
    pub dyachkov: Option<f64>,
    pub entropy_form: Option<f64>,
    pub theorem1_target: Option<f64>,
    pub bshouty_baseline: Option<f64>,
}

impl BoundsReport {
    pub fn get(&self, field: BoundField) -> Option<f64> {
        match field {
            BoundField::UnionBound => self.union_bound,
            BoundField::KleitmanReference => self.kleitman_reference,
            BoundField::Nrs => self.nrs,
            BoundField::Dyachkov => self.dyachkov,
            BoundField::EntropyForm => self.entropy_form,
            BoundField::Theorem1Target => self.theorem1_target,
            BoundField::BshoutyBaseline => self.bshouty_baseline,
        }
    }

    /// Present fields in canonical order.
    pub fn entries(&self) -> Vec<(BoundField, f64)> {
        BoundField::ALL
            .iter()
            .filter_map(|&f| self.get(f).map(|v| (f, v)))
            .collect()
    }

    /// Present fields that carry only a leading-order value.
    pub fn caveats(&self) -> Vec<BoundField> {
        self.entries()
            .into_iter()
            .map(|(f, _)| f)
            .filter(|f| f.is_asymptotic())
            .collect()
    }

    /// `key=value` lines: the fields, the log base, and the caveat list.
    pub fn to_lines(&self) -> Vec<String> {
        let mut lines: Vec<String> = self
            .entries()
            .into_iter()
            .map(|(f, v)| format!("{}={}", f.name(), v))
            .collect();
        lines.push(format!("log_base={LOG_BASE}"));
        let caveats: Vec<&str> = self.caveats().into_iter().map(BoundField::name).collect();
        lines.push(format!(
            "asymptotic_caveat={}",
            if caveats.is_empty() { "-".to_string() } else { caveats.join(",") }
        ));
        lines
    }
}

fn log2_n(n: usize) -> Result<f64> {
    if n < 2 {
        return Err(Error::Domain(format!("log2 n must be positive, got n={n}")));
    }
    Ok((n as f64).log2())
}

/// Universal-set fields. The binary-only references are omitted for `q > 2`.
pub fn universal_bounds_report(spec: UniversalSpec) -> Result<BoundsReport> {
    let log_n = log2_n(spec.n())?;
    let d = spec.d() as f64;
    let mut report = BoundsReport {
        union_bound: Some(union_bound(spec)),
        ..Default::default()
    };
    if spec.q() == 2 {
        report.kleitman_reference = Some(d.exp2() * log_n);
        report.theorem1_target = Some(d * d.exp2() * log_n);
        report.bshouty_baseline = Some(d.powi(5) * (2.66 * d).exp2() * log_n);
    }
    Ok(report)
}

/// Cover-free fields; the `log n` factor uses the spec's `n`.
pub fn cff_bounds_report(spec: CffSpec) -> Result<BoundsReport> {
    let log_n = log2_n(spec.n())?;
    let nrs = nrs(spec.r(), spec.s())?;
    let d = spec.d() as f64;
    let h = binary_entropy(spec.r() as f64 / d)?;
    Ok(BoundsReport {
        nrs: Some(nrs),
        dyachkov: Some(nrs * log_n),
        entropy_form: Some((h * d).exp2() * log_n),
        ..Default::default()
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel_close(a: f64, b: f64, tol: f64) -> bool {
        ((a - b) / b).abs() <= tol
    }

    #[test]
    fn entropy_values() {
        assert_eq!(binary_entropy(0.5).unwrap(), 1.0);
        assert_eq!(binary_entropy(0.0).unwrap(), 0.0);
        assert_eq!(binary_entropy(1.0).unwrap(), 0.0);
        assert!(rel_close(binary_entropy(0.25).unwrap(), 0.811_278_124_459_132_8, 1e-12));
        assert!(binary_entropy(-0.1).is_err());
        assert!(binary_entropy(1.5).is_err());
        assert!(binary_entropy(f64::NAN).is_err());
    }

    #[test]
    fn nrs_values() {
        assert_eq!(nrs(1, 1).unwrap(), 4.0);
        assert!(rel_close(nrs(2, 2).unwrap(), 9.284_467_373_628_998, 1e-12));
        assert!(matches!(nrs(0, 3), Err(Error::Domain(_))));
        assert!(matches!(nrs(3, 0), Err(Error::Domain(_))));
        assert_eq!(nrs(2, 5).unwrap(), nrs(5, 2).unwrap());
    }

    #[test]
    fn universal_report_values() {
        let r = universal_bounds_report(UniversalSpec::new(1024, 4, 2).unwrap()).unwrap();
        assert!(rel_close(r.union_bound.unwrap(), 399.252_776_002_528_5, 1e-12));
        assert_eq!(r.kleitman_reference, Some(160.0));
        assert_eq!(r.theorem1_target, Some(640.0));
        assert!(rel_close(r.bshouty_baseline.unwrap(), 16_340_265.565_641_766, 1e-12));
        assert_eq!(
            r.caveats(),
            vec![BoundField::KleitmanReference, BoundField::Theorem1Target]
        );
        assert!(r.nrs.is_none());
    }

    #[test]
    fn ternary_report_omits_binary_references() {
        let r = universal_bounds_report(UniversalSpec::new(10, 2, 3).unwrap()).unwrap();
        assert!(r.union_bound.is_some());
        assert!(r.kleitman_reference.is_none() && r.theorem1_target.is_none());
        assert!(r.bshouty_baseline.is_none());
    }

    #[test]
    fn cff_report_values() {
        let r = cff_bounds_report(CffSpec::new(1024, 2, 2).unwrap()).unwrap();
        assert!(rel_close(r.dyachkov.unwrap(), 92.844_673_736_289_98, 1e-12));
        assert!(rel_close(r.entropy_form.unwrap(), 160.0, 1e-12));
        let small = cff_bounds_report(CffSpec::new(4, 1, 1).unwrap()).unwrap();
        assert_eq!(small.dyachkov, Some(8.0));
        assert_eq!(small.entropy_form, Some(8.0));
        assert_eq!(small.caveats(), vec![BoundField::Dyachkov, BoundField::EntropyForm]);
    }

    #[test]
    fn small_n_is_a_domain_error() {
        assert!(universal_bounds_report(UniversalSpec::new(1, 1, 2).unwrap()).is_err());
        assert!(cff_bounds_report(CffSpec::new(3, 0, 2).unwrap()).is_err());
    }

    #[test]
    fn lines_format() {
        let r = cff_bounds_report(CffSpec::new(4, 1, 1).unwrap()).unwrap();
        assert_eq!(
            r.to_lines(),
            vec![
                "nrs=4",
                "dyachkov=8",
                "entropy_form=8",
                "log_base=2",
                "asymptotic_caveat=dyachkov,entropy_form"
            ]
        );
    }
}
