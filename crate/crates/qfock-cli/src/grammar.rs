//! Operator and state grammars.
//!
//! Operator specs are whitespace-separated: a head naming the operator
//! followed by `key=value` fields, e.g. `x+ i=1 n=-1 r=2`, `h i=2 k=-1`,
//! `K i=1`, `D`. Node indices are 1-based on the command line and 0-based
//! in the library. State specs are `{color:[parts], ...} @ eta=[c1,...,cn]`,
//! exactly the rendering the action report emits, so every reported state
//! re-parses.

use std::fmt;

use qfock::fock::{Sign, TorusOp};
use qfock::rootdata::QElement;
use qfock::symcore::ColoredPartition;

/// Parse failure with a byte offset into the offending argument.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrammarError {
    pub pos: usize,
    pub msg: String,
}

impl fmt::Display for GrammarError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parse error at byte {}: {}", self.pos, self.msg)
    }
}

impl std::error::Error for GrammarError {}

fn err<T>(pos: usize, msg: impl Into<String>) -> Result<T, GrammarError> {
    Err(GrammarError { pos, msg: msg.into() })
}

/// One parsed operator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OperatorSpec {
    /// Raising or lowering series coefficient, optionally a divided power.
    X { sign: Sign, node: usize, n: i64, r: u32 },
    /// Level generator; `k` is the signed level.
    H { node: usize, k: i64 },
    /// Torus element.
    Torus(TorusOp),
}

fn tokens(s: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let bytes = s.as_bytes();
    let mut pos = 0;
    while pos < bytes.len() {
        while pos < bytes.len() && bytes[pos].is_ascii_whitespace() {
            pos += 1;
        }
        let start = pos;
        while pos < bytes.len() && !bytes[pos].is_ascii_whitespace() {
            pos += 1;
        }
        if pos > start {
            out.push((start, &s[start..pos]));
        }
    }
    out
}

struct Fields {
    node: Option<usize>,
    n: Option<i64>,
    k: Option<i64>,
    r: Option<u32>,
}

fn parse_fields(toks: &[(usize, &str)], rank: usize) -> Result<Fields, GrammarError> {
    let mut fields = Fields { node: None, n: None, k: None, r: None };
    for &(pos, tok) in toks {
        let Some((key, value)) = tok.split_once('=') else {
            return err(pos, format!("expected key=value, got `{tok}`"));
        };
        let vpos = pos + key.len() + 1;
        match key {
            "i" => {
                let i: usize = match value.parse() {
                    Ok(v) => v,
                    Err(_) => return err(vpos, "node index must be a positive integer"),
                };
                if i == 0 || i > rank {
                    return err(vpos, format!("node index out of range 1..={rank}"));
                }
                fields.node = Some(i - 1);
            }
            "n" => match value.parse() {
                Ok(v) => fields.n = Some(v),
                Err(_) => return err(vpos, "mode must be an integer"),
            },
            "k" => match value.parse() {
                Ok(v) => fields.k = Some(v),
                Err(_) => return err(vpos, "level must be an integer"),
            },
            "r" => match value.parse() {
                Ok(v) if v >= 1 => fields.r = Some(v),
                _ => return err(vpos, "power must be a positive integer"),
            },
            _ => return err(pos, format!("unknown field `{key}`")),
        }
    }
    Ok(fields)
}

/// Parses one operator spec against a datum of the given rank.
pub fn parse_operator(s: &str, rank: usize) -> Result<OperatorSpec, GrammarError> {
    let toks = tokens(s);
    let Some(&(head_pos, head)) = toks.first() else {
        return err(0, "empty operator spec");
    };
    let fields = parse_fields(&toks[1..], rank)?;
    let need_node = |f: &Fields| f.node.ok_or(GrammarError {
        pos: head_pos,
        msg: format!("`{head}` needs a node field i=..."),
    });
    let no_mode_fields = |f: &Fields| {
        if f.n.is_some() || f.k.is_some() || f.r.is_some() {
            err(head_pos, format!("`{head}` takes no n/k/r fields"))
        } else {
            Ok(())
        }
    };
    match head {
        "x+" | "x-" => {
            let sign = if head == "x+" { Sign::Plus } else { Sign::Minus };
            let node = need_node(&fields)?;
            let Some(n) = fields.n else {
                return err(head_pos, format!("`{head}` needs a mode field n=..."));
            };
            if fields.k.is_some() {
                return err(head_pos, format!("`{head}` takes no k field"));
            }
            Ok(OperatorSpec::X { sign, node, n, r: fields.r.unwrap_or(1) })
        }
        "h" => {
            let node = need_node(&fields)?;
            let Some(k) = fields.k else {
                return err(head_pos, "`h` needs a level field k=...");
            };
            if k == 0 {
                return err(head_pos, "`h` level must be nonzero");
            }
            if fields.n.is_some() || fields.r.is_some() {
                return err(head_pos, "`h` takes no n/r fields");
            }
            Ok(OperatorSpec::H { node, k })
        }
        "K" => {
            let node = need_node(&fields)?;
            if fields.n.is_some() || fields.k.is_some() || fields.r.is_some() {
                return err(head_pos, "`K` takes no n/k/r fields");
            }
            Ok(OperatorSpec::Torus(TorusOp::K(node)))
        }
        "Kinv" => {
            let node = need_node(&fields)?;
            if fields.n.is_some() || fields.k.is_some() || fields.r.is_some() {
                return err(head_pos, "`Kinv` takes no n/k/r fields");
            }
            Ok(OperatorSpec::Torus(TorusOp::KInv(node)))
        }
        "D" => no_mode_fields(&fields).and(Ok(OperatorSpec::Torus(TorusOp::D))),
        "Dinv" => no_mode_fields(&fields).and(Ok(OperatorSpec::Torus(TorusOp::DInv))),
        "C" => no_mode_fields(&fields).and(Ok(OperatorSpec::Torus(TorusOp::C))),
        "Cinv" => no_mode_fields(&fields).and(Ok(OperatorSpec::Torus(TorusOp::CInv))),
        _ => err(head_pos, format!("unknown operator `{head}`")),
    }
}

/// Parses a basis state `{...} @ eta=[...]` against the given rank.
pub fn parse_state(s: &str, rank: usize) -> Result<(ColoredPartition, QElement), GrammarError> {
    let Some(at) = s.find('@') else {
        return err(s.len(), "expected `@` between partition and weight");
    };
    let left = s[..at].trim();
    let left_off = s[..at].len() - s[..at].trim_start().len();
    let part = ColoredPartition::parse(left, rank)
        .map_err(|e| GrammarError { pos: left_off + e.pos, msg: e.msg })?;
    let right = s[at + 1..].trim_start();
    let right_off = at + 1 + (s.len() - at - 1 - right.len());
    let Some(list) = right.strip_prefix("eta=") else {
        return err(right_off, "expected `eta=[...]` after `@`");
    };
    let eta = parse_eta(list.trim_end(), rank, right_off + 4)?;
    Ok((part, eta))
}

fn parse_eta(s: &str, rank: usize, off: usize) -> Result<QElement, GrammarError> {
    let bytes = s.as_bytes();
    if bytes.first() != Some(&b'[') {
        return err(off, "expected `[`");
    }
    if bytes.last() != Some(&b']') {
        return err(off + s.len(), "expected `]`");
    }
    let inner = &s[1..s.len() - 1];
    let mut coords = Vec::new();
    if !inner.trim().is_empty() {
        let mut cursor = 1;
        for piece in inner.split(',') {
            match piece.trim().parse::<i64>() {
                Ok(v) => coords.push(v),
                Err(_) => return err(off + cursor, format!("bad coordinate `{}`", piece.trim())),
            }
            cursor += piece.len() + 1;
        }
    }
    if coords.len() != rank {
        return err(off, format!("expected {rank} coordinates, got {}", coords.len()));
    }
    Ok(QElement::new(coords))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn operator_specs_parse() {
        assert_eq!(
            parse_operator("x+ i=1 n=-1 r=2", 2).unwrap(),
            OperatorSpec::X { sign: Sign::Plus, node: 0, n: -1, r: 2 },
        );
        assert_eq!(
            parse_operator("h i=2 k=-3", 2).unwrap(),
            OperatorSpec::H { node: 1, k: -3 },
        );
        assert_eq!(parse_operator("D", 1).unwrap(), OperatorSpec::Torus(TorusOp::D));
        assert_eq!(
            parse_operator("Kinv i=1", 1).unwrap(),
            OperatorSpec::Torus(TorusOp::KInv(0)),
        );
    }

    #[test]
    fn operator_errors_carry_positions() {
        let e = parse_operator("x+ i=3 n=0", 2).unwrap_err();
        assert_eq!(e.pos, 5);
        assert!(parse_operator("x+ i=1", 2).is_err());
        assert!(parse_operator("h i=1 k=0", 2).is_err());
        assert!(parse_operator("y i=1", 2).is_err());
        assert!(parse_operator("K i=1 n=2", 2).is_err());
    }

    #[test]
    fn states_round_trip_through_display() {
        let (part, eta) = parse_state("{1:[2,1], 2:[1]} @ eta=[1,-1]", 2).unwrap();
        let rendered = format!("{part} @ eta={eta}");
        assert_eq!(parse_state(&rendered, 2).unwrap(), (part, eta));
        let (vac, zero) = parse_state("{} @ eta=[0]", 1).unwrap();
        assert!(vac.is_empty());
        assert!(zero.is_zero());
    }

    #[test]
    fn state_errors_carry_positions() {
        assert!(parse_state("{} eta=[0]", 1).is_err());
        assert!(parse_state("{} @ [0]", 1).is_err());
        assert!(parse_state("{} @ eta=[0,0]", 1).is_err());
        assert!(parse_state("{1:[0]} @ eta=[0]", 1).is_err());
    }
}
