//! Browser bindings for the static demo page in `www/`. Every export returns JSON.

use serde::Serialize;
use wasm_bindgen::prelude::*;

use selfdual::format::parse_stgc;
use selfdual::registers::{count_mccr_by_period, fsr_cycles};
use selfdual::stgc::diff::build_diff_stgc;
use selfdual::stgc::recursive::build_recursive_stgc;
use selfdual::stgc::search::search_thm3_max_period;
use selfdual::stgc::{is_max_period, verify_stgc};
use selfdual::zmseq::digits;
use selfdual::{Error, RegisterSpec, Stgc};

/// Largest register the page will simulate.
const PAGE_STATE_LIMIT: u128 = 1 << 20;

#[derive(Debug, Serialize)]
pub struct Cycles {
    pub modulus: u8,
    pub order: usize,
    pub cycles: Vec<String>,
    /// Closed-form count per period.
    pub by_period: Vec<(u64, String)>,
}

#[derive(Debug, Serialize)]
pub struct Code {
    pub modulus: u8,
    pub length: usize,
    pub period: usize,
    pub rows: Vec<String>,
    pub report: Vec<String>,
    pub passed: bool,
    pub max_period: bool,
}

pub fn cycles(m: u8, n: usize) -> Result<Cycles, Error> {
    let spec = RegisterSpec::ccr(m, n)?;
    let states = selfdual::arith::checked_pow(m as u64, n as u64).unwrap_or(u128::MAX);
    if states > PAGE_STATE_LIMIT {
        return Err(Error::GuardExceeded { size: states, limit: PAGE_STATE_LIMIT });
    }
    let cycles = fsr_cycles(&spec)?.iter().map(|c| c.digits()).collect();
    let by_period = count_mccr_by_period(m, n).by_period.into_iter().map(|(d, c)| (d, c.to_string())).collect();
    Ok(Cycles { modulus: m, order: n, cycles, by_period })
}

fn describe(code: &Stgc) -> Code {
    let report = verify_stgc(code);
    Code {
        modulus: code.modulus(),
        length: code.length(),
        period: code.period(),
        rows: code.rows().map(digits).collect(),
        report: report.to_string().lines().map(str::to_string).collect(),
        passed: report.passed(),
        max_period: is_max_period(code.modulus(), code.length(), code.period() as u128),
    }
}

/// `kind` is `diff` (m = 3..5), `necklace` (p = 3, 5, 7) or `recursive` (p^2 for p = 3).
pub fn build(kind: &str, param: u8) -> Result<Code, Error> {
    let code = match kind {
        "diff" => build_diff_stgc(param)?,
        "necklace" => {
            search_thm3_max_period(param)?.ok_or_else(|| Error::SearchFailed(format!("no ordering for p={param}")))?
        }
        "recursive" => build_recursive_stgc(param, 2)?.0,
        other => return Err(Error::InvalidParameter(format!("unknown construction '{other}'"))),
    };
    Ok(describe(&code))
}

pub fn verify(text: &str) -> Result<Code, Error> {
    Ok(describe(&parse_stgc(text)?))
}

fn to_js<T: Serialize>(r: Result<T, Error>) -> Result<String, JsError> {
    let v = r.map_err(|e| JsError::new(&e.to_string()))?;
    serde_json::to_string(&v).map_err(|e| JsError::new(&e.to_string()))
}

#[wasm_bindgen(js_name = registerCycles)]
pub fn register_cycles(m: u8, n: usize) -> Result<String, JsError> {
    to_js(cycles(m, n))
}

#[wasm_bindgen(js_name = buildCode)]
pub fn build_code(kind: &str, param: u8) -> Result<String, JsError> {
    to_js(build(kind, param))
}

#[wasm_bindgen(js_name = verifyCode)]
pub fn verify_code(text: &str) -> Result<String, JsError> {
    to_js(verify(text))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycles_json() {
        let c = cycles(2, 3).unwrap();
        assert_eq!(c.cycles, ["01", "000111"]);
        let json = serde_json::to_value(&c).unwrap();
        assert_eq!(json["by_period"], serde_json::json!([[2, "1"], [6, "1"]]));
        assert!(cycles(2, 40).is_err());
        assert!(cycles(1, 3).is_err());
    }

    #[test]
    fn builds() {
        let c = build("diff", 3).unwrap();
        assert_eq!((c.length, c.period, c.passed, c.max_period), (3, 27, true, true));
        assert_eq!(c.rows.len(), 27);
        let c = build("necklace", 5).unwrap();
        assert_eq!((c.period, c.passed), (30, true));
        let c = build("recursive", 3).unwrap();
        assert_eq!((c.length, c.period, c.passed), (9, 19683, true));
        assert!(build("other", 3).is_err());
    }

    #[test]
    fn verify_text() {
        let c = verify("STGC m=2 n=2 P=4\n00\n01\n11\n10\n").unwrap();
        assert!(c.passed && c.max_period);
        assert!(c.report.last().unwrap().starts_with("result:"));
        assert!(verify("STGC m=2").is_err());
    }
}
