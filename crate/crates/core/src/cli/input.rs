use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{invalid, Result};
use crate::exact::Scalar;
use crate::graph::{cayley_z2, complete, cycle, kneser, petersen, q_kneser, CayleySpec, Graph};

fn numbers(args: &str, count: usize, name: &str) -> Result<Vec<usize>> {
    let parts: Vec<&str> = if args.is_empty() { Vec::new() } else { args.split(',').collect() };
    if parts.len() != count {
        return Err(invalid(format!("{name} takes {count} comma-separated argument(s), got {:?}", args)));
    }
    parts
        .iter()
        .map(|p| p.trim().parse::<usize>().map_err(|_| invalid(format!("{name}: `{p}` is not a non-negative integer"))))
        .collect()
}

/// Parses `name:args`, e.g. `cycle:5`, `kneser:5,2`, `qkneser:2,4,2`,
/// `cayley:2:01,10`.
pub fn parse_generator(spec: &str) -> Result<Graph> {
    let (name, args) = spec.split_once(':').unwrap_or((spec, ""));
    match name {
        "cycle" => cycle(numbers(args, 1, name)?[0]),
        "complete" => complete(numbers(args, 1, name)?[0]),
        "petersen" => {
            numbers(args, 0, name)?;
            Ok(petersen())
        }
        "kneser" => {
            let v = numbers(args, 2, name)?;
            kneser(v[0], v[1])
        }
        "qkneser" => {
            let v = numbers(args, 3, name)?;
            q_kneser(v[0] as u64, v[1], v[2])
        }
        "cayley" => parse_cayley(args),
        _ => Err(invalid(format!(
            "unknown generator `{name}`; expected cycle, complete, petersen, kneser, qkneser or cayley"
        ))),
    }
}

/// Parses `n:bits,...`; each bit string has at most `n` digits, most
/// significant first.
pub fn parse_cayley(spec: &str) -> Result<Graph> {
    let (n, bits) = spec.split_once(':').ok_or_else(|| invalid("cayley spec must look like n:bits,..."))?;
    let n: u32 = n.trim().parse().map_err(|_| invalid(format!("cayley: `{n}` is not an exponent")))?;
    let mut set = Vec::new();
    for b in bits.split(',').filter(|b| !b.is_empty()) {
        if b.len() > n as usize {
            return Err(invalid(format!("cayley: `{b}` has more than {n} bits")));
        }
        set.push(u32::from_str_radix(b, 2).map_err(|_| invalid(format!("cayley: `{b}` is not a bit string")))?);
    }
    cayley_z2(&CayleySpec::new(n, set)?)
}

/// `num/den`, an integer, or a float.
pub fn parse_scalar(s: &str) -> Result<Scalar> {
    let bad = || invalid(format!("`{s}` is not a number"));
    if let Some((a, b)) = s.split_once('/') {
        let (a, b): (BigInt, BigInt) = (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?);
        if b == BigInt::from(0) {
            return Err(bad());
        }
        return Ok(Scalar::Exact(BigRational::new(a, b)));
    }
    if let Ok(i) = s.trim().parse::<BigInt>() {
        return Ok(Scalar::Exact(BigRational::from_integer(i)));
    }
    s.trim().parse::<f64>().map(Scalar::Float).map_err(|_| bad())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::emit_graph6;

    #[test]
    fn generators() {
        assert_eq!(parse_generator("cycle:5").unwrap().order(), 5);
        assert_eq!(parse_generator("kneser:5,2").unwrap().edge_count(), 15);
        assert_eq!(parse_generator("qkneser:2,4,2").unwrap().order(), 35);
        assert_eq!(parse_generator("petersen").unwrap().order(), 10);
        assert!(parse_generator("cycle").is_err());
        assert!(parse_generator("kneser:5").is_err());
        assert!(parse_generator("wheel:5").is_err());
    }

    #[test]
    fn cayley_square_is_c4() {
        let g = parse_cayley("2:01,10").unwrap();
        assert_eq!(emit_graph6(&g), emit_graph6(&Graph::from_edges(4, [(0, 1), (1, 3), (3, 2), (2, 0)]).unwrap()));
        assert!(parse_cayley("2:101").is_err());
        assert!(parse_cayley("2:00").is_err());
        assert_eq!(parse_generator("cayley:2:01,10").unwrap().edge_count(), 4);
    }

    #[test]
    fn scalars() {
        assert_eq!(parse_scalar("1/4").unwrap(), Scalar::Exact(BigRational::new(1.into(), 4.into())));
        assert_eq!(parse_scalar("3").unwrap(), Scalar::integer(3));
        assert_eq!(parse_scalar("0.5").unwrap(), Scalar::Float(0.5));
        assert!(parse_scalar("1/0").is_err());
    }
}
