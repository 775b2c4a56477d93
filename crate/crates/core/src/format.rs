//! Text formats for presentations (`.alg`) and skew contexts (`.skw`).
//!
//! A presentation:
//!
//! ```text
//! # comments run to the end of the line
//! algebra T6
//! scalars laurent Q
//! generators x1 x2 x3
//! precedence x1 x2 x3
//! degrees x1:0 x2:1 x3:1 Q:0
//! order augmented_dlex
//! orientation by_order
//! relations
//! x1*x2 -> Q*x2*x1 + (1 - Q^2)*x3
//! x2*x3 = Q*x3*x2 + (Q^-1 - Q)*x1
//! ```
//!
//! `scalars` is `rational`, or `polynomial`, `laurent` or `ratfunc` followed
//! by the parameter name. `precedence`, `degrees` (default all 1),
//! `order` and `orientation` are optional; without an order the
//! orientation is explicit. `->` fixes the leading word, `=` lets the order
//! pick it.
//!
//! A skew context:
//!
//! ```text
//! skew WQ
//! scalars laurent Q
//! base y laurent
//! alpha Q*y
//! alpha_inv Q^-1*y
//! gamma y^-1
//! ```

use crate::expr::ParseError;
use crate::freealg::{Alphabet, DegreeFunction, FreeAlgebra, MonomialOrder, OrderKind};
use crate::rewrite::{single_term, Orientation, ReductionSystem};
use crate::scalar::{ScalarKind, ScalarRing};
use crate::skew::{BaseElem, BaseMap, BaseRing, ReversingContext};

fn err(line: usize, col: usize, message: impl Into<String>) -> ParseError {
    ParseError { line, col, message: message.into() }
}

/// Non-blank lines with comments removed, as `(line number, column of the
/// first character, text)`.
fn lines(text: &str) -> Vec<(usize, usize, &str)> {
    text.lines()
        .enumerate()
        .filter_map(|(i, l)| {
            let l = l.split('#').next().unwrap_or("");
            let trimmed = l.trim_start();
            let col = l.len() - trimmed.len() + 1;
            let t = trimmed.trim_end();
            (!t.is_empty()).then_some((i + 1, col, t))
        })
        .collect()
}

fn split_key(t: &str) -> (&str, &str) {
    match t.find(char::is_whitespace) {
        Some(i) => (&t[..i], t[i..].trim_start()),
        None => (t, ""),
    }
}

fn parse_scalars(line: usize, col: usize, v: &str) -> Result<ScalarRing, ParseError> {
    let words: Vec<&str> = v.split_whitespace().collect();
    match words.as_slice() {
        ["rational"] => Ok(ScalarRing::rational()),
        ["polynomial", p] => Ok(ScalarRing::polynomial(p)),
        ["laurent", p] => Ok(ScalarRing::laurent(p)),
        ["ratfunc", p] => Ok(ScalarRing::ratfunc(p)),
        _ => Err(err(line, col, format!("bad scalars line '{v}'"))),
    }
}

fn show_scalars(r: &ScalarRing) -> String {
    match r.kind {
        ScalarKind::Rational => "rational".into(),
        ScalarKind::Polynomial => format!("polynomial {}", r.param),
        ScalarKind::Laurent => format!("laurent {}", r.param),
        ScalarKind::RatFunc => format!("ratfunc {}", r.param),
    }
}

/// Column of the value part of a `key value` line.
fn value_col(col: usize, t: &str) -> usize {
    let (k, v) = split_key(t);
    col + t.len() - v.len().min(t.len() - k.len())
}

pub fn parse_presentation(text: &str) -> Result<ReductionSystem, ParseError> {
    let mut name = String::from("unnamed");
    let mut ring: Option<ScalarRing> = None;
    let mut gens: Option<Vec<String>> = None;
    let mut precedence: Option<(usize, Vec<String>)> = None;
    let mut degrees: Option<(usize, usize, String)> = None;
    let mut order: Option<OrderKind> = None;
    let mut orientation: Option<Orientation> = None;
    let all = lines(text);
    let mut body = all.len();
    for (idx, &(ln, col, t)) in all.iter().enumerate() {
        let (key, v) = split_key(t);
        let vc = value_col(col, t);
        match key {
            "algebra" => name = v.to_string(),
            "scalars" => ring = Some(parse_scalars(ln, vc, v)?),
            "generators" => gens = Some(v.split_whitespace().map(str::to_string).collect()),
            "precedence" => precedence = Some((ln, v.split_whitespace().map(str::to_string).collect())),
            "degrees" => degrees = Some((ln, vc, v.to_string())),
            "order" => {
                order = Some(match v {
                    "explicit" => {
                        orientation = Some(Orientation::Explicit);
                        continue;
                    }
                    _ => OrderKind::from_name(v).ok_or_else(|| err(ln, vc, format!("unknown order '{v}'")))?,
                })
            }
            "orientation" => {
                orientation = Some(match v {
                    "explicit" => Orientation::Explicit,
                    "by_order" => Orientation::ByOrder,
                    _ => return Err(err(ln, vc, format!("unknown orientation '{v}'"))),
                })
            }
            "relations" => {
                body = idx + 1;
                break;
            }
            _ => return Err(err(ln, col, format!("unknown header '{key}'"))),
        }
    }
    let ring = ring.unwrap_or_else(ScalarRing::rational);
    let gens = gens.ok_or_else(|| err(1, 1, "missing 'generators' line"))?;
    let mut alphabet = Alphabet::new(&gens).map_err(|e| err(1, 1, e.to_string()))?;
    if let Some((ln, p)) = precedence {
        alphabet = alphabet.with_precedence(&p).map_err(|e| err(ln, 1, e.to_string()))?;
    }
    if ring.has_param() && gens.contains(&ring.param) {
        return Err(err(1, 1, format!("'{}' is both a generator and the parameter", ring.param)));
    }
    let mut d = DegreeFunction::unit(gens.len());
    if let Some((ln, vc, v)) = degrees {
        for item in v.split_whitespace() {
            let (n, k) = item.split_once(':').ok_or_else(|| err(ln, vc, format!("expected name:degree, got '{item}'")))?;
            let k: u32 = k.parse().map_err(|_| err(ln, vc, format!("bad degree in '{item}'")))?;
            if ring.has_param() && n == ring.param {
                d.parameter_degree = k;
            } else {
                let g = alphabet.index(n).map_err(|e| err(ln, vc, e.to_string()))?;
                d.generator_degrees[g as usize] = k;
            }
        }
    }
    let order = match order {
        Some(k) => Some(MonomialOrder::new(k, d, &alphabet).map_err(|e| err(1, 1, e.to_string()))?),
        None => None,
    };
    let orientation = orientation.unwrap_or(if order.is_some() { Orientation::ByOrder } else { Orientation::Explicit });
    let alg = FreeAlgebra::new(alphabet, ring);
    let mut sys = ReductionSystem::new(&name, alg, orientation, order).map_err(|e| err(1, 1, e.to_string()))?;
    for &(ln, col, t) in &all[body..] {
        let (lhs, rhs, op_at, op_len) = match (t.find("->"), t.find('=')) {
            (Some(i), _) => (&t[..i], &t[i + 2..], i, 2),
            (None, Some(i)) => (&t[..i], &t[i + 1..], i, 1),
            (None, None) => return Err(err(ln, col, "expected '->' or '='")),
        };
        let l = sys.alg.parse_at(lhs, ln, col)?;
        let r = sys.alg.parse_at(rhs, ln, col + op_at + op_len)?;
        let res = if op_len == 2 {
            let (w, c) = single_term(&l).ok_or_else(|| err(ln, col, "the left side of '->' must be a single term"))?;
            sys.add_relation(w, &c, r)
        } else {
            if sys.order().is_none() {
                return Err(err(ln, col + op_at, "'=' needs an order to pick the leading word"));
            }
            sys.add_equation(&l, &r)
        };
        res.map_err(|e| err(ln, col, e.to_string()))?;
    }
    Ok(sys)
}

pub fn print_presentation(sys: &ReductionSystem) -> String {
    let a = &sys.alg.alphabet;
    let mut out = format!("algebra {}\nscalars {}\ngenerators {}\n", sys.name, show_scalars(&sys.alg.ring), a.names().join(" "));
    if !a.has_default_precedence() {
        out.push_str(&format!("precedence {}\n", a.precedence().join(" ")));
    }
    if let Some(o) = sys.order() {
        let mut items: Vec<String> =
            a.names().iter().zip(&o.degree.generator_degrees).map(|(n, k)| format!("{n}:{k}")).collect();
        if sys.alg.ring.has_param() {
            items.push(format!("{}:{}", sys.alg.ring.param, o.degree.parameter_degree));
        }
        out.push_str(&format!("degrees {}\norder {}\n", items.join(" "), o.kind.name()));
    }
    let orient = match sys.orientation() {
        Orientation::Explicit => "explicit",
        Orientation::ByOrder => "by_order",
    };
    out.push_str(&format!("orientation {orient}\nrelations\n"));
    out.push_str(&sys.to_string());
    out
}

pub fn parse_skew(text: &str) -> Result<ReversingContext, ParseError> {
    let mut name = String::from("unnamed");
    let mut ring = ScalarRing::rational();
    let mut base: Option<(String, bool)> = None;
    let mut maps: [Option<(usize, usize, String)>; 3] = [None, None, None];
    for (ln, col, t) in lines(text) {
        let (key, v) = split_key(t);
        let vc = value_col(col, t);
        match key {
            "skew" => name = v.to_string(),
            "scalars" => ring = parse_scalars(ln, vc, v)?,
            "base" => {
                let words: Vec<&str> = v.split_whitespace().collect();
                base = Some(match words.as_slice() {
                    [y, "laurent"] => (y.to_string(), true),
                    [y, "polynomial"] | [y] => (y.to_string(), false),
                    _ => return Err(err(ln, vc, format!("bad base line '{v}'"))),
                });
            }
            "alpha" => maps[0] = Some((ln, vc, v.to_string())),
            "alpha_inv" => maps[1] = Some((ln, vc, v.to_string())),
            "gamma" => maps[2] = Some((ln, vc, v.to_string())),
            _ => return Err(err(ln, col, format!("unknown key '{key}'"))),
        }
    }
    let (var, laurent) = base.ok_or_else(|| err(1, 1, "missing 'base' line"))?;
    if var == "x" || (ring.has_param() && var == ring.param) {
        return Err(err(1, 1, format!("base variable '{var}' clashes with x or the parameter")));
    }
    let base = BaseRing { var, laurent, scalars: ring };
    let probe = ReversingContext::new("", base.clone(), BaseMap::identity(), BaseMap::identity())
        .map_err(|e| err(1, 1, e.to_string()))?;
    let mut elems: Vec<(usize, BaseElem)> = Vec::new();
    for (i, key) in ["alpha", "alpha_inv", "gamma"].iter().enumerate() {
        let (ln, vc, v) = maps[i].clone().ok_or_else(|| err(1, 1, format!("missing '{key}' line")))?;
        let e = probe.parse_base(&v).map_err(|e| err(ln, vc, e.to_string()))?;
        elems.push((ln, e));
    }
    let alpha = BaseMap::new(&base, elems[0].1.clone(), elems[1].1.clone()).map_err(|e| err(elems[0].0, 1, e.to_string()))?;
    let gamma = BaseMap::new(&base, elems[2].1.clone(), elems[2].1.clone())
        .map_err(|e| err(elems[2].0, 1, format!("gamma must be an involution: {e}")))?;
    ReversingContext::new(&name, base, alpha, gamma).map_err(|e| err(1, 1, e.to_string()))
}

pub fn print_skew(ctx: &ReversingContext) -> String {
    let b = &ctx.base;
    format!(
        "skew {}\nscalars {}\nbase {} {}\nalpha {}\nalpha_inv {}\ngamma {}\n",
        ctx.name,
        show_scalars(&b.scalars),
        b.var,
        if b.laurent { "laurent" } else { "polynomial" },
        b.show(ctx.alpha.image()),
        b.show(ctx.alpha.inverse_image()),
        b.show(ctx.gamma.image()),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presets;
    use crate::scalar::rat;

    fn same(a: &ReductionSystem, b: &ReductionSystem) {
        assert_eq!(a.name, b.name);
        assert_eq!(a.alg, b.alg);
        assert_eq!(a.orientation(), b.orientation());
        assert_eq!(a.order(), b.order());
        assert_eq!(a.relations(), b.relations());
    }

    #[test]
    fn presets_round_trip() {
        for s in [presets::t5(), presets::t1(), presets::t6(), presets::tq_symbolic(), presets::t6_quot(&rat(3)), presets::ut(), presets::oq()] {
            let text = print_presentation(&s);
            let back = parse_presentation(&text).unwrap();
            same(&s, &back);
            assert_eq!(print_presentation(&back), text);
        }
        for c in [presets::v(), presets::vt(), presets::wq(&rat(4)).unwrap(), presets::wq_symbolic()] {
            let text = print_skew(&c);
            let back = parse_skew(&text).unwrap();
            assert_eq!(back, c);
            assert_eq!(print_skew(&back), text);
        }
    }

    #[test]
    fn equations_are_oriented() {
        let text = "algebra Tq\nscalars laurent q\ngenerators x1 x2 x3\ndegrees x1:0 x2:1 x3:1\norder augmented_dlex\nrelations\n\
                    q*x2*x1 + (1 - q^2)*x3 = x1*x2\nx2*x3 - q*x3*x2 = (q^-1 - q)*x1\nx1*x3 = q^-1*x3*x1 + (1 - q^-2)*x2\n";
        let s = parse_presentation(text).unwrap();
        assert_eq!(s.relations(), presets::tq_symbolic().relations());
        assert_eq!(s.ambiguities().len(), 1);
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse_presentation("generators x1 x2 x3\norder dlex\nrelations\nx1*x2 = x1*x2 + x3\n").unwrap_err();
        assert_eq!(e.line, 4);
        let e = parse_presentation("generators x1 x2\nrelations\nx1*x2 -> x1 + x4\n").unwrap_err();
        assert_eq!((e.line, e.col), (3, 15));
        assert!(parse_presentation("generators x1\nbogus 3\n").is_err());
        assert!(parse_presentation("generators x1 x2\nrelations\nx1*x2 = x2\n").is_err());
    }

    #[test]
    fn empty_relations_give_a_free_algebra() {
        let s = parse_presentation("algebra F\ngenerators a b\nrelations\n").unwrap();
        assert!(s.relations().is_empty());
        assert!(s.check_confluence().unwrap().confluent);
    }

    #[test]
    fn skew_load_checks() {
        let bad = "skew B\nbase y\nalpha y + 1\nalpha_inv y + 1\ngamma -y\n";
        assert!(parse_skew(bad).is_err());
        let not_inv = "skew B\nbase y\nalpha y + 1\nalpha_inv y - 1\ngamma 2*y\n";
        assert!(parse_skew(not_inv).is_err());
        let control = "skew C\nbase y\nalpha y + 1\nalpha_inv y - 1\ngamma y\n";
        assert!(!parse_skew(control).unwrap().is_reversible());
    }
}
