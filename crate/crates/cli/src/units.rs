//! SI quantities with metric prefixes: "10um", "2e-5 K", "20uK", "3.8e-26kg".

use std::fmt;

use thermowit::constants::CODATA_2018;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Quantity {
    Length,
    Mass,
    Temperature,
    Energy,
}

impl Quantity {
    /// SI unit symbol used in output headers.
    pub fn unit(self) -> &'static str {
        match self {
            Quantity::Length => "m",
            Quantity::Mass => "kg",
            Quantity::Temperature => "K",
            Quantity::Energy => "J",
        }
    }
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Quantity::Length => "length",
            Quantity::Mass => "mass",
            Quantity::Temperature => "temperature",
            Quantity::Energy => "energy",
        };
        f.write_str(name)
    }
}

/// Metric prefixes and their powers of ten.
const PREFIXES: &[(&str, i32)] = &[
    ("Y", 24),
    ("Z", 21),
    ("E", 18),
    ("P", 15),
    ("T", 12),
    ("G", 9),
    ("M", 6),
    ("k", 3),
    ("h", 2),
    ("da", 1),
    ("d", -1),
    ("c", -2),
    ("m", -3),
    ("u", -6),
    ("µ", -6),
    ("μ", -6),
    ("n", -9),
    ("p", -12),
    ("f", -15),
    ("a", -18),
    ("z", -21),
    ("y", -24),
];

fn prefix_exponent(prefix: &str) -> Option<i32> {
    if prefix.is_empty() {
        return Some(0);
    }
    PREFIXES.iter().find(|(p, _)| *p == prefix).map(|(_, e)| *e)
}

enum Scale {
    /// Power of ten, applied to the decimal text so "10um" is exactly 1e-5.
    Decimal(i32),
    Factor(f64),
}

/// Parse `text` as a quantity of the given kind and return it in SI base
/// units. A bare number is taken to be in SI base units already.
pub fn parse_quantity(text: &str, kind: Quantity) -> Result<f64, String> {
    let text = text.trim();
    let (number, unit) = split_number(text).ok_or_else(|| format!("`{text}` does not start with a number"))?;
    let unit = unit.trim();
    let scale = if unit.is_empty() {
        Scale::Decimal(0)
    } else {
        unit_scale(unit, kind).ok_or_else(|| format!("`{unit}` is not a {kind} unit"))?
    };
    let v = match scale {
        Scale::Factor(f) => number.parse::<f64>().map_err(|e| e.to_string())? * f,
        Scale::Decimal(shift) => {
            let (mantissa, exponent) = match number.find(['e', 'E']) {
                Some(i) => (&number[..i], number[i + 1..].parse::<i32>().map_err(|e| e.to_string())?),
                None => (number, 0),
            };
            format!("{mantissa}e{}", exponent.saturating_add(shift))
                .parse::<f64>()
                .map_err(|e| e.to_string())?
        }
    };
    if !v.is_finite() {
        return Err(format!("`{text}` is not finite"));
    }
    Ok(v)
}

fn split_number(text: &str) -> Option<(&str, &str)> {
    let mut ends: Vec<usize> = text.char_indices().map(|(i, _)| i).skip(1).collect();
    ends.push(text.len());
    ends.into_iter().rev().find_map(|end| {
        let head = &text[..end];
        // reject "inf", "nan" and friends
        if !head.bytes().all(|b| b.is_ascii_digit() || b"+-.eE".contains(&b)) {
            return None;
        }
        head.parse::<f64>().ok().map(|_| (head, &text[end..]))
    })
}

fn unit_scale(unit: &str, kind: Quantity) -> Option<Scale> {
    match kind {
        Quantity::Mass => {
            if unit == "u" || unit == "Da" {
                return Some(Scale::Factor(CODATA_2018.atomic_mass_unit));
            }
            let prefix = unit.strip_suffix('g')?;
            prefix_exponent(prefix).map(|e| Scale::Decimal(e - 3))
        }
        _ => {
            let prefix = unit.strip_suffix(kind.unit())?;
            prefix_exponent(prefix).map(Scale::Decimal)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64) -> bool {
        ((a - b) / b).abs() < 1e-14
    }

    #[test]
    fn lengths() {
        assert_eq!(parse_quantity("10um", Quantity::Length).unwrap(), 1e-5);
        assert_eq!(parse_quantity("1.5e2nm", Quantity::Length).unwrap(), 1.5e-7);
        assert!(close(parse_quantity("10um", Quantity::Length).unwrap(), 1e-5));
        assert!(close(parse_quantity("10 µm", Quantity::Length).unwrap(), 1e-5));
        assert!(close(parse_quantity("1e-5", Quantity::Length).unwrap(), 1e-5));
        assert!(close(parse_quantity("1e-5m", Quantity::Length).unwrap(), 1e-5));
        assert!(close(parse_quantity("5mm", Quantity::Length).unwrap(), 5e-3));
        assert!(close(parse_quantity("50nm", Quantity::Length).unwrap(), 5e-8));
        assert!(close(parse_quantity("2km", Quantity::Length).unwrap(), 2e3));
    }

    #[test]
    fn temperatures_and_energies() {
        assert!(close(parse_quantity("20uK", Quantity::Temperature).unwrap(), 2e-5));
        assert!(close(parse_quantity("2e-5 K", Quantity::Temperature).unwrap(), 2e-5));
        assert!(close(parse_quantity("3mK", Quantity::Temperature).unwrap(), 3e-3));
        assert!(close(parse_quantity("1.5e-3pJ", Quantity::Energy).unwrap(), 1.5e-15));
    }

    #[test]
    fn masses() {
        assert!(close(parse_quantity("3.8e-26kg", Quantity::Mass).unwrap(), 3.8e-26));
        assert!(close(parse_quantity("3.8e-23g", Quantity::Mass).unwrap(), 3.8e-26));
        let u = CODATA_2018.atomic_mass_unit;
        assert!(close(parse_quantity("23u", Quantity::Mass).unwrap(), 23.0 * u));
        assert!(close(parse_quantity("23 Da", Quantity::Mass).unwrap(), 23.0 * u));
    }

    #[test]
    fn rejects_bad_input() {
        assert!(parse_quantity("10uK", Quantity::Length).is_err());
        assert!(parse_quantity("10 degC", Quantity::Temperature).is_err());
        assert!(parse_quantity("um", Quantity::Length).is_err());
        assert!(parse_quantity("inf", Quantity::Length).is_err());
        assert!(parse_quantity("1e400", Quantity::Length).is_err());
        assert!(parse_quantity("", Quantity::Length).is_err());
    }
}
