//! The elementary-state spec accepted on the command line:
//! `elem(k,p,q; a=[a1,a2], b=[b1,b2], c=[c1,c2])` with exact scalar entries
//! in the expression grammar, and the pole selector `a`, `b`, `all`, or a
//! comma list mixing the named poles with explicit chart locations.

use theta_twistor::error::Error;
use theta_twistor::parser;
use theta_twistor::section::{ElementaryState, Spin};
use theta_twistor::{Expr, Scalar};

fn spec_err(msg: impl Into<String>) -> Error {
    Error::SyntaxError {
        line: 1,
        col: 1,
        msg: msg.into(),
    }
}

fn parse_scalar(text: &str) -> Result<Scalar, Error> {
    let e = parser::parse(text)?;
    e.as_constant()
        .ok_or_else(|| spec_err(format!("`{}` is not a constant scalar", text)))
}

fn parse_pair(text: &str) -> Result<[Scalar; 2], Error> {
    let inner = text
        .trim()
        .strip_prefix('[')
        .and_then(|t| t.strip_suffix(']'))
        .ok_or_else(|| spec_err(format!("expected [s1,s2], got `{}`", text)))?;
    let parts: Vec<&str> = inner.split(',').collect();
    if parts.len() != 2 {
        return Err(spec_err(format!("expected two entries in `{}`", text)));
    }
    Ok([parse_scalar(parts[0])?, parse_scalar(parts[1])?])
}

pub fn parse_elem(text: &str, spin: Spin) -> Result<ElementaryState, Error> {
    let body = text
        .trim()
        .strip_prefix("elem(")
        .and_then(|t| t.strip_suffix(')'))
        .ok_or_else(|| spec_err("state must have the form elem(k,p,q; a=[..], b=[..], c=[..])"))?;
    let (powers, spinors) = body
        .split_once(';')
        .ok_or_else(|| spec_err("missing `;` between powers and spinors"))?;
    let kpq: Vec<&str> = powers.split(',').map(str::trim).collect();
    if kpq.len() != 3 {
        return Err(spec_err("expected three powers k,p,q"));
    }
    let parse_u32 = |t: &str| -> Result<u32, Error> {
        t.parse::<u32>()
            .map_err(|_| spec_err(format!("invalid power `{}`", t)))
    };
    let (k, p, q) = (parse_u32(kpq[0])?, parse_u32(kpq[1])?, parse_u32(kpq[2])?);

    let mut abar = None;
    let mut bbar = None;
    let mut c = None;
    // Entries are name=[s1,s2]; commas inside brackets are not separators.
    let mut depth = 0usize;
    let mut start = 0usize;
    let bytes = spinors.as_bytes();
    let mut fields: Vec<&str> = Vec::new();
    for (i, ch) in bytes.iter().enumerate() {
        match ch {
            b'[' => depth += 1,
            b']' => depth = depth.saturating_sub(1),
            b',' if depth == 0 => {
                fields.push(&spinors[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    fields.push(&spinors[start..]);
    for field in fields {
        let (name, value) = field
            .split_once('=')
            .ok_or_else(|| spec_err(format!("expected name=[..] in `{}`", field)))?;
        let pair = parse_pair(value)?;
        match name.trim() {
            "a" => abar = Some(pair),
            "b" => bbar = Some(pair),
            "c" => c = Some(pair),
            other => return Err(spec_err(format!("unknown spinor `{}`", other))),
        }
    }
    let abar = abar.ok_or_else(|| spec_err("missing a=[..]"))?;
    let bbar = bbar.ok_or_else(|| spec_err("missing b=[..]"))?;
    let c = c.ok_or_else(|| spec_err("missing c=[..]"))?;
    ElementaryState::new(spin, k, p, q, abar, bbar, c)
}

pub fn parse_poles(text: &str, state: &ElementaryState) -> Result<Vec<Expr>, Error> {
    let mut out: Vec<Expr> = Vec::new();
    let mut push = |e: Expr| {
        if !out.iter().any(|x| x.sub(&e).is_zero()) {
            out.push(e);
        }
    };
    for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        match item {
            "a" => push(state.pole_a()?),
            "b" => push(state.pole_b()?),
            "all" => {
                push(state.pole_a()?);
                push(state.pole_b()?);
            }
            other => push(parser::parse(other)?),
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_the_documented_form() {
        let st = parse_elem("elem(1,2,2; a=[1,1], b=[0,1], c=[1,1/2])", Spin(1)).unwrap();
        assert_eq!(st.section.homogeneity_degree().unwrap(), -3);
        assert_eq!(st.abar, [Scalar::int(1), Scalar::int(1)]);
        assert_eq!(st.bbar, [Scalar::int(0), Scalar::int(1)]);
    }

    #[test]
    fn scalar_entries_use_the_expression_grammar() {
        let st = parse_elem("elem(0,1,1; a=[1,2*I], b=[0,1], c=[1,0])", Spin(0)).unwrap();
        assert_eq!(st.abar[1], Scalar::int_i(2));
    }

    #[test]
    fn pole_selectors() {
        let st = parse_elem("elem(0,1,1; a=[3,2], b=[0,1], c=[1,0])", Spin(0)).unwrap();
        let all = parse_poles("all", &st).unwrap();
        assert_eq!(all.len(), 2);
        let just_a = parse_poles("a", &st).unwrap();
        assert_eq!(just_a[0], Expr::constant(Scalar::rat(-3, 2)));
        let explicit = parse_poles("-3/2", &st).unwrap();
        assert_eq!(explicit[0], Expr::constant(Scalar::rat(-3, 2)));
    }

    #[test]
    fn errors_are_reported() {
        assert!(parse_elem("elem(1,1; a=[1,1], b=[0,1], c=[1,0])", Spin(0)).is_err());
        assert!(parse_elem("elem(0,1,1; a=[1,1], b=[0,1])", Spin(0)).is_err());
        assert!(parse_elem("elem(0,1,1; a=[theta_1,1], b=[0,1], c=[1,0])", Spin(0)).is_err());
    }
}
