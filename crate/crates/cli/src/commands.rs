use stringy_core::arcspace::{from_stringy, motivic_integral_nc};
use stringy_core::error::{Error, Result};
use stringy_core::resolution::{
    check_duality, stringy_e, stringy_euler, stringy_hodge, validate_data, Classification, StratifiedResolutionData,
    StringyResult,
};
use stringy_core::toricfan::{check_fan, shed_volume, stringy_e_toric, support_function, Fan};
use stringy_core::Rational;

use crate::report::{Payload, Report, Status};

fn hodge_items(report: &mut Report, result: &StringyResult) {
    match stringy_hodge(result) {
        Ok(h) => {
            let negative = h.negative_entries();
            report.reported("hodge", Payload::Hodge(h));
            if !negative.is_empty() {
                let list: Vec<String> = negative.iter().map(|(p, q, v)| format!("h^({p},{q}) = {v}")).collect();
                report.reported("hodge_negative", Payload::Text(list.join(", ")));
            }
        }
        Err(e) => report.reported("hodge", Payload::Text(e.to_string())),
    }
}

pub fn cmd_toric(fan: &Fan, box_cap: u64) -> Result<Report> {
    check_fan(fan)?;
    let sf = support_function(fan)?;
    let mut report = Report::new("toric");
    let gorenstein = sf.root_index == 1;
    let class = if gorenstein {
        "Gorenstein".to_string()
    } else {
        format!("Q-Gorenstein, index {}", sf.root_index)
    };
    report.reported("classification", Payload::Text(class));
    let result = stringy_e_toric(fan, box_cap)?;
    let e = result.e_st()?;
    report.reported("E_st", Payload::Fraction(result.fraction.clone()));
    report.reported("e_st", Payload::Rational(e.clone()));
    let vol = Rational::from_integer(shed_volume(fan)?);
    report.check("shed_volume", e == vol, Payload::Pair(e, vol));
    if gorenstein {
        report.check("polynomial", result.fraction.is_polynomial(), Payload::None);
    }
    hodge_items(&mut report, &result);
    if fan.is_complete() {
        report.check("duality", check_duality(&result), Payload::Bool(check_duality(&result)));
    } else {
        report.push("duality", Status::Skipped, Payload::Text("fan is not complete".into()));
    }
    Ok(report)
}

fn ensure_valid(data: &StratifiedResolutionData) -> Result<Classification> {
    let v = validate_data(data);
    if let Some(d) = v.diagnostics.first() {
        let all: Vec<String> = v.diagnostics.iter().map(ToString::to_string).collect();
        return Err(match d {
            stringy_core::resolution::Diagnostic::LogTerminalViolation { a, .. } => {
                Error::LogTerminalViolation(a.clone())
            }
            _ => Error::InvalidData(all.join("; ")),
        });
    }
    Ok(v.classification)
}

pub fn cmd_resolution(data: &StratifiedResolutionData) -> Result<Report> {
    let class = ensure_valid(data)?;
    let mut report = Report::new("resolution");
    let class = match class {
        Classification::CanonicalGorenstein => "canonical, Gorenstein discrepancies",
        Classification::LogTerminal => "log-terminal",
        Classification::NotLogTerminal => "not log-terminal",
    };
    report.reported("classification", Payload::Text(class.into()));
    let result = stringy_e(data)?;
    let e = stringy_euler(data)?;
    report.reported("E_st", Payload::Fraction(result.fraction.clone()));
    report.reported("e_st", Payload::Rational(e.clone()));
    hodge_items(&mut report, &result);
    report.reported("duality", Payload::Bool(check_duality(&result)));
    report.reported("e_st_denominator", Payload::Integer(e.denom().clone()));
    Ok(report)
}

pub fn cmd_arc(data: &StratifiedResolutionData, n: Option<u32>) -> Result<Report> {
    let n = n.unwrap_or(data.dim);
    let integral = motivic_integral_nc(data, n)?;
    let mut report = Report::new("arc");
    report.reported("integral", Payload::Arc(integral.clone()));
    report.reported("lognorm", Payload::LogNorm(integral.lognorm()));
    let via = from_stringy(&stringy_e(data)?, n)?;
    report.check("identity", integral.same_value(&via)?, Payload::None);
    Ok(report)
}

/// Exit code of an error: 2 for invalid input, 3 for a fan that is not
/// Q-Gorenstein, 4 when the Box enumeration cap is hit.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::NotQGorenstein { .. } => 3,
        Error::CapExceeded { .. } => 4,
        _ => 2,
    }
}
