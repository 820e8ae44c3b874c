//! Machine-readable command output: an ordered list of key/value pairs
//! rendered either as line-delimited `key = value` text or as JSON. Exact
//! integers and rationals are never routed through floats, and reals are
//! printed with 15 significant digits, so identical inputs give
//! byte-identical payloads.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

#[derive(Clone, Debug)]
pub enum Value {
    Int(BigInt),
    Rational(BigRational),
    Real(f64),
    Text(String),
    Bool(bool),
    IntMatrix(Vec<Vec<BigInt>>),
}

#[derive(Clone, Debug, Default)]
pub struct Payload {
    entries: Vec<(String, Value)>,
}

impl Payload {
    pub fn new() -> Self {
        Payload::default()
    }

    pub fn push(&mut self, key: &str, value: Value) {
        self.entries.push((key.to_string(), value));
    }

    pub fn int(&mut self, key: &str, v: impl Into<BigInt>) {
        self.push(key, Value::Int(v.into()));
    }

    pub fn rational(&mut self, key: &str, v: BigRational) {
        self.push(key, Value::Rational(v));
    }

    pub fn real(&mut self, key: &str, v: f64) {
        self.push(key, Value::Real(v));
    }

    pub fn text(&mut self, key: &str, v: impl Into<String>) {
        self.push(key, Value::Text(v.into()));
    }

    pub fn bool(&mut self, key: &str, v: bool) {
        self.push(key, Value::Bool(v));
    }

    pub fn matrix(&mut self, key: &str, m: &crate::mat::IntegerMatrix) {
        let rows = (0..m.rows()).map(|i| m.row(i)).collect();
        self.push(key, Value::IntMatrix(rows));
    }

    pub fn entries(&self) -> &[(String, Value)] {
        &self.entries
    }

    /// Line-delimited `key = value` text. Rationals render as `p/q` (plain
    /// `p` when the denominator is 1), strings are quoted.
    pub fn to_kv(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.entries {
            out.push_str(k);
            out.push_str(" = ");
            out.push_str(&render_value(v));
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> String {
        let mut map = serde_json::Map::new();
        for (k, v) in &self.entries {
            map.insert(k.clone(), json_value(v));
        }
        serde_json::to_string_pretty(&serde_json::Value::Object(map))
            .expect("payload serializes to JSON")
    }

    /// A plain two-column table for human eyes.
    pub fn to_table(&self) -> String {
        let width = self.entries.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
        let mut out = String::new();
        for (k, v) in &self.entries {
            out.push_str(&format!("  {k:<width$}  {}\n", render_value(v)));
        }
        out
    }
}

fn render_value(v: &Value) -> String {
    match v {
        Value::Int(x) => x.to_string(),
        Value::Rational(q) => render_rational(q),
        Value::Real(x) => format_real(*x),
        Value::Text(s) => format!("{s:?}"),
        Value::Bool(b) => b.to_string(),
        Value::IntMatrix(rows) => {
            let body: Vec<String> = rows
                .iter()
                .map(|r| {
                    let cells: Vec<String> = r.iter().map(ToString::to_string).collect();
                    format!("[{}]", cells.join(", "))
                })
                .collect();
            format!("[{}]", body.join(", "))
        }
    }
}

fn render_rational(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

fn json_value(v: &Value) -> serde_json::Value {
    match v {
        Value::Int(x) => match i64::try_from(x.clone()) {
            Ok(n) => serde_json::Value::from(n),
            Err(_) => serde_json::Value::from(x.to_string()),
        },
        Value::Rational(q) => serde_json::Value::from(render_rational(q)),
        Value::Real(x) => serde_json::Value::from(*x),
        Value::Text(s) => serde_json::Value::from(s.clone()),
        Value::Bool(b) => serde_json::Value::from(*b),
        Value::IntMatrix(rows) => serde_json::Value::from(
            rows.iter()
                .map(|r| {
                    serde_json::Value::from(
                        r.iter()
                            .map(|x| json_value(&Value::Int(x.clone())))
                            .collect::<Vec<_>>(),
                    )
                })
                .collect::<Vec<_>>(),
        ),
    }
}

/// Render a real with 15 significant digits, plain decimal for ordinary
/// magnitudes and scientific notation for extreme ones.
pub fn format_real(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{x:.14e}");
    let (mantissa, exp) = sci.split_once('e').expect("scientific format");
    let exp: i32 = exp.parse().expect("exponent parses");
    if !(-4..15).contains(&exp) {
        return trim_zeros(mantissa).to_string() + "e" + &exp.to_string();
    }
    // shift the decimal point into plain notation
    let neg = mantissa.starts_with('-');
    let digits: String = mantissa.chars().filter(|c| c.is_ascii_digit()).collect();
    let point = 1 + exp; // digits before the decimal point
    let mut body = String::new();
    if point <= 0 {
        body.push_str("0.");
        for _ in 0..-point {
            body.push('0');
        }
        body.push_str(&digits);
    } else if (point as usize) >= digits.len() {
        body.push_str(&digits);
        for _ in 0..(point as usize - digits.len()) {
            body.push('0');
        }
    } else {
        body.push_str(&digits[..point as usize]);
        body.push('.');
        body.push_str(&digits[point as usize..]);
    }
    let body = trim_zeros(&body).to_string();
    if neg {
        format!("-{body}")
    } else {
        body
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn real_formatting() {
        assert_eq!(format_real(0.0), "0");
        assert_eq!(format_real(1.0), "1");
        assert_eq!(format_real(0.25), "0.25");
        assert_eq!(format_real(0.4389859656416061), "0.438985965641606");
        assert_eq!(format_real(2.6339157938496336), "2.63391579384963");
        assert_eq!(format_real(-12.5), "-12.5");
        assert_eq!(format_real(1.0e-7), "1e-7");
        assert_eq!(format_real(3.0e20), "3e20");
    }

    #[test]
    fn kv_rendering() {
        let mut p = Payload::new();
        p.int("order", 6);
        p.rational("nu", BigRational::new(BigInt::from(4), BigInt::from(2)));
        p.rational("half", BigRational::new(BigInt::from(1), BigInt::from(2)));
        p.bool("equal", true);
        p.text("group", "Z/6 + Z");
        let kv = p.to_kv();
        assert_eq!(
            kv,
            "order = 6\nnu = 2\nhalf = 1/2\nequal = true\ngroup = \"Z/6 + Z\"\n"
        );
        // JSON stays parseable
        let parsed: serde_json::Value = serde_json::from_str(&p.to_json()).unwrap();
        assert_eq!(parsed["order"], 6);
        assert_eq!(parsed["half"], "1/2");
    }
}
