//! Element words on the command line: generator names separated by
//! whitespace or `*`, each optionally raised to an integer power
//! (`b^2`, `a^-1`). The token `1` is the identity.

use std::sync::Arc;

use madic_core::{Element, PolyspinalGroup};

use crate::error::CliError;

pub fn parse_element(group: &Arc<PolyspinalGroup>, text: &str) -> Result<Element, CliError> {
    let mut g = Element::identity(group.degree());
    let tokens: Vec<&str> = text
        .split(|c: char| c.is_whitespace() || c == '*')
        .filter(|t| !t.is_empty())
        .collect();
    if tokens.is_empty() {
        return Err(CliError::Word("empty word (use 1 for the identity)".into()));
    }
    for token in tokens {
        let (name, power) = match token.split_once('^') {
            Some((n, k)) => {
                let k: i64 = k
                    .parse()
                    .map_err(|_| CliError::Word(format!("bad exponent in {token:?}")))?;
                (n, k)
            }
            None => (token, 1),
        };
        if name == "1" {
            continue;
        }
        let gen = Element::generator(group, name).map_err(|_| CliError::Word(format!("unknown generator {name:?}")))?;
        g = g.mul(&gen.pow(power))?;
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use madic_core::spinal::{self, DEFAULT_DIRECTED_CAP};
    use madic_core::tree::equal_to_depth;

    fn grigorchuk() -> Arc<PolyspinalGroup> {
        PolyspinalGroup::new(spinal::grigorchuk(), DEFAULT_DIRECTED_CAP).unwrap()
    }

    #[test]
    fn separators_and_powers() {
        let g = grigorchuk();
        let x = parse_element(&g, "a*b a^-1").unwrap();
        let a = Element::generator(&g, "a").unwrap();
        let b = Element::generator(&g, "b").unwrap();
        let y = a.mul(&b).unwrap().mul(&a.inverse()).unwrap();
        assert!(equal_to_depth(&x, &y, 6).unwrap());
        assert!(parse_element(&g, "1").unwrap().portrait(4).unwrap().is_trivial());
        assert!(parse_element(&g, "b^2 c^4").unwrap().portrait(6).unwrap().is_trivial());
    }

    #[test]
    fn rejects_bad_tokens() {
        let g = grigorchuk();
        assert!(parse_element(&g, "").is_err());
        assert!(parse_element(&g, "z").is_err());
        assert!(parse_element(&g, "b^x").is_err());
    }
}
