//! Option parsing shared across subcommands: reflection-group types,
//! multiplicity specifications, and coordinate vectors.

use dunkl_core::roots::{MultiplicitySpec, TypeTag};
use dunkl_core::scalar::{rat_int, Rational, Scalar};

/// A failure attributable to the request rather than to mathematics; the
/// caller exits with code 2.
pub fn usage(msg: impl Into<String>) -> crate::CliError {
    crate::CliError {
        code: 2,
        message: msg.into(),
    }
}

/// Parse a group type such as `A` (with `--rank`), `a2`, `i2:5`, `z2:3`,
/// `g2`, or `f4`.
pub fn parse_type(spec: &str, rank: Option<usize>) -> Result<TypeTag, crate::CliError> {
    let lowered = spec.to_ascii_lowercase();
    let (name, inline_rank) = match lowered.split_once(':') {
        Some((n, r)) => {
            let parsed = r
                .parse::<usize>()
                .map_err(|_| usage(format!("bad rank in type {:?}", spec)))?;
            (n.to_string(), Some(parsed))
        }
        None => {
            // Allow a trailing rank digit for the single-letter families.
            let head: String = lowered.chars().take_while(|c| c.is_alphabetic()).collect();
            let tail = &lowered[head.len()..];
            match (head.as_str(), tail) {
                ("a" | "b" | "d" | "i", digits) if !digits.is_empty() => {
                    // i2, g2, f4 etc. are handled below as whole names.
                    match lowered.as_str() {
                        "g2" | "f4" | "e6" | "e7" | "e8" | "h3" | "h4" | "z2" | "i2" => {
                            (lowered.clone(), None)
                        }
                        _ => {
                            let parsed = digits
                                .parse::<usize>()
                                .map_err(|_| usage(format!("bad rank in type {:?}", spec)))?;
                            (head, Some(parsed))
                        }
                    }
                }
                _ => (lowered.clone(), None),
            }
        }
    };
    let rank = inline_rank.or(rank);
    let need_rank =
        || rank.ok_or_else(|| usage(format!("type {:?} needs --rank (or A2, i2:5, ...)", spec)));
    match name.as_str() {
        "a" => Ok(TypeTag::A(need_rank()?)),
        "b" => Ok(TypeTag::B(need_rank()?)),
        "d" => Ok(TypeTag::D(need_rank()?)),
        "z2" => Ok(TypeTag::Z2(need_rank()?)),
        "i2" => Ok(TypeTag::I2(need_rank()?)),
        "g2" => Ok(TypeTag::G2),
        "f4" => Ok(TypeTag::F4),
        "e6" => Ok(TypeTag::E6),
        "e7" => Ok(TypeTag::E7),
        "e8" => Ok(TypeTag::E8),
        "h3" => Ok(TypeTag::H3),
        "h4" => Ok(TypeTag::H4),
        other => Err(usage(format!("unknown group type {:?}", other))),
    }
}

/// Parse one exact value: an integer, a fraction `p/q`, or a finite decimal
/// (converted exactly in base ten, so `0.7` means `7/10`).
pub fn parse_rational(token: &str) -> Result<Rational, crate::CliError> {
    let t = token.trim();
    if let Some((int_part, frac_part)) = t.split_once('.') {
        let digits: String = format!("{}{}", int_part.trim_start_matches(['+', '-']), frac_part);
        if digits.is_empty() || !digits.chars().all(|c| c.is_ascii_digit()) {
            return Err(usage(format!("bad numeric value {:?}", token)));
        }
        let numer: Rational = digits
            .parse()
            .map_err(|_| usage(format!("bad numeric value {:?}", token)))?;
        let mut denom = rat_int(1);
        for _ in 0..frac_part.len() {
            denom *= rat_int(10);
        }
        let signed = if t.starts_with('-') { -numer } else { numer };
        Ok(signed / denom)
    } else {
        t.parse()
            .map_err(|_| usage(format!("bad numeric value {:?}", token)))
    }
}

/// Parse a `--kappa` specification: `symbolic`, or a comma list of exact
/// values (integers, fractions, decimals), one per reflection class. A
/// single value is repeated across all classes. Decimal input is flagged as
/// float mode for reporting; the values themselves are exact.
pub fn parse_kappa(spec: &str, num_classes: usize) -> Result<MultiplicitySpec, crate::CliError> {
    let trimmed = spec.trim();
    if trimmed.eq_ignore_ascii_case("symbolic") {
        return MultiplicitySpec::symbolic(num_classes).map_err(crate::CliError::math);
    }
    let tokens: Vec<&str> = trimmed.split(',').collect();
    let mut values = Vec::new();
    for t in &tokens {
        values.push(parse_rational(t)?);
    }
    if values.len() == 1 && num_classes > 1 {
        values = vec![values[0].clone(); num_classes];
    }
    if values.len() != num_classes {
        return Err(usage(format!(
            "kappa has {} value(s) but the system has {} reflection class(es)",
            values.len(),
            num_classes
        )));
    }
    let spec_out = MultiplicitySpec::rational(&values);
    if tokens.iter().any(|t| t.contains('.')) {
        Ok(MultiplicitySpec {
            mode: dunkl_core::roots::KappaMode::Float,
            values: spec_out.values,
        })
    } else {
        Ok(spec_out)
    }
}

/// The kappa values as Scalars for modules that take them directly
/// (`symbolic` maps to the parameters `k0, k1`).
pub fn parse_kappa_scalars(
    spec: &str,
    num_classes: usize,
) -> Result<Vec<Scalar>, crate::CliError> {
    Ok(parse_kappa(spec, num_classes)?.values)
}

/// Parse a comma-separated vector of exact values.
pub fn parse_vector(spec: &str, dim: usize) -> Result<Vec<Rational>, crate::CliError> {
    let vals: Vec<Rational> = spec
        .split(',')
        .map(parse_rational)
        .collect::<Result<_, _>>()?;
    if vals.len() != dim {
        return Err(usage(format!(
            "vector {:?} has {} entries, expected {}",
            spec,
            vals.len(),
            dim
        )));
    }
    Ok(vals)
}

/// Parse a comma-separated vector of floats.
pub fn parse_float_vector(spec: &str, dim: usize) -> Result<Vec<f64>, crate::CliError> {
    let vals: Vec<f64> = spec
        .split(',')
        .map(|t| {
            t.trim()
                .parse::<f64>()
                .map_err(|_| usage(format!("bad float {:?}", t)))
        })
        .collect::<Result<_, _>>()?;
    if vals.len() != dim {
        return Err(usage(format!(
            "vector {:?} has {} entries, expected {}",
            spec,
            vals.len(),
            dim
        )));
    }
    Ok(vals)
}

/// Parse a comma-separated composition of nonnegative integers.
pub fn parse_composition(spec: &str) -> Result<Vec<u32>, crate::CliError> {
    spec.split(',')
        .map(|t| {
            t.trim()
                .parse::<u32>()
                .map_err(|_| usage(format!("bad composition part {:?}", t)))
        })
        .collect()
}
