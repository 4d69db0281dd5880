//! Line-oriented text format for categorical pairs.
//!
//! ```text
//! // the Russell instance
//! objects O
//! gen R : O -> O
//! gen ∼ : O -> O
//! sharp ♯ : O
//! rule ∼ ∼ => ε
//! axiom R -> ∼♯
//! two-category
//! ```
//!
//! Directives: `objects A B ..`, `object A`, `gen NAME : DOM -> COD`,
//! `sharp NAME : OBJ`, `rule PATTERN => REPLACEMENT` (holes are `?x`),
//! `axiom SRC -> DST`, `lambda`, `two-category`, `budget N`. Lines starting
//! with `//` are comments.

use std::str::FromStr;

use super::category::Category;
use super::pair::CategoricalPair;
use super::ShiftError;

impl FromStr for CategoricalPair<Category> {
    type Err = ShiftError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let mut base = Category::new();
        let mut axioms = Vec::new();
        let mut rules = Vec::new();
        let (mut lambda, mut two) = (false, false);
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with("//") {
                continue;
            }
            let at = |e: ShiftError| ShiftError::Line {
                line: i + 1,
                source: Box::new(e),
            };
            let (keyword, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
            let rest = rest.trim();
            match keyword {
                "objects" | "object" => {
                    for name in rest.split_whitespace() {
                        base.add_object(name).map_err(at)?;
                    }
                }
                "gen" => {
                    let (name, dom, cod) = signature(rest).map_err(at)?;
                    base.add_generator(name, dom, cod).map_err(at)?;
                }
                "sharp" => {
                    let (name, obj) = rest
                        .split_once(':')
                        .ok_or_else(|| at(ShiftError::Parse(format!("expected 'NAME : OBJ': {rest}"))))?;
                    base.add_sharp(name.trim(), obj.trim()).map_err(at)?;
                }
                // Rules and axioms are resolved after all generators are known.
                "rule" => rules.push((i + 1, rest.to_string())),
                "axiom" => axioms.push((i + 1, rest.to_string())),
                "lambda" => lambda = true,
                "two-category" => two = true,
                "budget" => {
                    let n = rest
                        .parse::<usize>()
                        .map_err(|_| at(ShiftError::Parse(format!("bad budget: {rest}"))))?;
                    base.set_budget(n);
                }
                other => return Err(at(ShiftError::Parse(format!("unknown directive '{other}'")))),
            }
        }
        for (line, text) in rules {
            let rule = base.parse_rule(&text).map_err(|e| ShiftError::Line {
                line,
                source: Box::new(e),
            })?;
            base.add_rule(rule);
        }
        let mut pair = if lambda {
            CategoricalPair::lambda(base)
        } else {
            CategoricalPair::new(base)
        };
        pair.is_two_category |= two;
        for (line, text) in axioms {
            let arrow = pair.parse_arrow(&text).map_err(|e| ShiftError::Line {
                line,
                source: Box::new(e),
            })?;
            pair.add_arrow(arrow);
        }
        Ok(pair)
    }
}

fn signature(rest: &str) -> Result<(&str, &str, &str), ShiftError> {
    let bad = || ShiftError::Parse(format!("expected 'NAME : DOM -> COD': {rest}"));
    let (name, ends) = rest.split_once(':').ok_or_else(bad)?;
    let (dom, cod) = ends
        .split_once("->")
        .or_else(|| ends.split_once('→'))
        .ok_or_else(bad)?;
    Ok((name.trim(), dom.trim(), cod.trim()))
}
