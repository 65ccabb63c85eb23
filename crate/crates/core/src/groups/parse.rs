//! Group specification strings and element literals.
//!
//! Element literals are whitespace-separated factors `name` or `name^k`.
//! Generator names are `x1, x2, ...`; single-letter aliases `a b c d`,
//! `s t u v w` and `x y z` stand for the first generators, and `e` is the
//! identity. Elements of `Z^d` may also be written as `(2,-1)`.

use super::{Group, GroupElement, GroupKind, Letter};
use crate::error::{Error, Result};

pub(crate) fn parse_group_spec(spec: &str) -> Result<Group> {
    let spec = spec.trim();
    let (family, rest) = spec
        .split_once(':')
        .ok_or_else(|| Error::parse("group spec", 0, "expected `family:params`"))?;
    let offset = family.len() + 1;
    let int = |s: &str, pos: usize| -> Result<usize> {
        s.trim()
            .parse::<usize>()
            .map_err(|_| Error::parse("group spec", pos, format!("expected an integer, got `{s}`")))
    };
    match family {
        "free" => Group::new(GroupKind::Free {
            rank: int(rest, offset)?,
        }),
        "zd" => Group::new(GroupKind::FreeAbelian {
            rank: int(rest, offset)?,
        }),
        "fpc" => {
            let mut orders = Vec::new();
            let mut pos = offset;
            for part in rest.split(',') {
                orders.push(int(part, pos)? as u32);
                pos += part.len() + 1;
            }
            Group::new(GroupKind::FreeProductCyclic { orders })
        }
        other => Err(Error::parse(
            "group spec",
            0,
            format!("unknown family `{other}` (expected free, zd or fpc)"),
        )),
    }
}

fn alias(c: char) -> Option<usize> {
    Some(match c {
        'a' | 's' | 'x' => 1,
        'b' | 't' | 'y' => 2,
        'c' | 'u' | 'z' => 3,
        'd' | 'v' => 4,
        'w' => 5,
        _ => return None,
    })
}

pub fn parse_word(group: &Group, text: &str) -> Result<GroupElement> {
    let trimmed = text.trim_start();
    let lead = text.len() - trimmed.len();
    if trimmed.starts_with('(') {
        return parse_tuple(group, trimmed.trim_end(), lead);
    }
    let mut letters: Vec<Letter> = Vec::new();
    let rank = group.rank();
    for (pos, token) in tokens(text) {
        let (name, exp) = match token.split_once('^') {
            Some((n, e)) => {
                let e: i64 = e.parse().map_err(|_| {
                    Error::parse("element", pos + n.len() + 1, format!("bad exponent `{e}`"))
                })?;
                (n, e)
            }
            None => (token, 1),
        };
        if name == "e" || name == "1" {
            continue;
        }
        let gen = if let Some(digits) = name.strip_prefix('x').filter(|d| !d.is_empty()) {
            digits
                .parse::<usize>()
                .map_err(|_| Error::parse("element", pos, format!("bad generator `{name}`")))?
        } else {
            let mut chars = name.chars();
            match (chars.next(), chars.next()) {
                (Some(c), None) => alias(c).ok_or_else(|| {
                    Error::parse("element", pos, format!("unknown generator `{name}`"))
                })?,
                _ => return Err(Error::parse("element", pos, format!("unknown generator `{name}`"))),
            }
        };
        if gen == 0 || gen > rank {
            return Err(Error::parse(
                "element",
                pos,
                format!("generator `{name}` outside 1..={rank}"),
            ));
        }
        if exp.unsigned_abs() > 1_000_000 {
            return Err(Error::parse("element", pos, "exponent too large"));
        }
        let letter = gen as Letter * exp.signum() as Letter;
        letters.extend(std::iter::repeat_n(letter, exp.unsigned_abs() as usize));
    }
    group.from_letters(&letters)
}

/// Tokens with their byte offsets; `*` and `.` also separate factors.
fn tokens(text: &str) -> impl Iterator<Item = (usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in text.char_indices() {
        let sep = c.is_whitespace() || c == '*' || c == '.' || c == '·';
        match (sep, start) {
            (true, Some(s)) => {
                out.push((s, &text[s..i]));
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((s, &text[s..]));
    }
    out.into_iter()
}

fn parse_tuple(group: &Group, text: &str, lead: usize) -> Result<GroupElement> {
    let GroupKind::FreeAbelian { rank } = group.kind() else {
        return Err(Error::parse(
            "element",
            lead,
            format!("tuple literals need a free abelian group, not {}", group.spec()),
        ));
    };
    let inner = text
        .strip_prefix('(')
        .and_then(|t| t.strip_suffix(')'))
        .ok_or_else(|| Error::parse("element", lead, "unbalanced parentheses"))?;
    let mut exps = Vec::new();
    let mut pos = lead + 1;
    for part in inner.split(',') {
        let v: i64 = part
            .trim()
            .parse()
            .map_err(|_| Error::parse("element", pos, format!("bad coordinate `{}`", part.trim())))?;
        exps.push(v);
        pos += part.len() + 1;
    }
    if exps.len() != *rank {
        return Err(Error::parse(
            "element",
            lead,
            format!("expected {rank} coordinates, found {}", exps.len()),
        ));
    }
    group.from_exponents(&exps)
}

pub fn format_word(group: &Group, g: &GroupElement) -> String {
    if let Some(exps) = group.exponents(g) {
        let parts: Vec<String> = exps.iter().map(i64::to_string).collect();
        return format!("({})", parts.join(","));
    }
    if g.is_identity() {
        return "e".to_string();
    }
    let mut parts = Vec::new();
    let word = g.word();
    let mut i = 0;
    while i < word.len() {
        let l = word[i];
        let mut j = i;
        while j < word.len() && word[j] == l {
            j += 1;
        }
        let run = (j - i) as i64 * i64::from(l.signum());
        let gen = l.unsigned_abs();
        parts.push(if run == 1 {
            format!("x{gen}")
        } else {
            format!("x{gen}^{run}")
        });
        i = j;
    }
    parts.join(" ")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_specs() {
        assert_eq!(Group::parse("free:2").unwrap().spec(), "free:2");
        assert_eq!(Group::parse("zd:3").unwrap().spec(), "zd:3");
        let g = Group::parse("fpc:2,3").unwrap();
        assert_eq!(g.spec(), "fpc:2,3");
        assert_eq!(g.rank(), 2);
        assert!(Group::parse("foo:2").is_err());
        assert!(Group::parse("free").is_err());
        match Group::parse("fpc:2,x").unwrap_err() {
            Error::Parse { pos, .. } => assert_eq!(pos, 6),
            e => panic!("unexpected {e}"),
        }
    }

    #[test]
    fn literals_round_trip() {
        let f2 = Group::parse("free:2").unwrap();
        let g = f2.parse_element("x1 x2^-1 x2^-1 x1^3").unwrap();
        assert_eq!(format_word(&f2, &g), "x1 x2^-2 x1^3");
        assert_eq!(f2.parse_element(&format_word(&f2, &g)).unwrap(), g);
        assert_eq!(f2.parse_element("x y x^-1").unwrap().len(), 3);
        assert!(f2.parse_element("e").unwrap().is_identity());

        let z2 = Group::parse("zd:2").unwrap();
        let g = z2.parse_element("(2,-1)").unwrap();
        assert_eq!(format_word(&z2, &g), "(2,-1)");
        assert_eq!(z2.parse_element("x2^-1 x1^2").unwrap(), g);

        let fp = Group::parse("fpc:2,3").unwrap();
        let g = fp.parse_element("s t^2").unwrap();
        assert_eq!(format_word(&fp, &g), "x1 x2^-1");
    }

    #[test]
    fn literal_errors_carry_positions() {
        let f2 = Group::parse("free:2").unwrap();
        match f2.parse_element("x1 x3").unwrap_err() {
            Error::Parse { pos, .. } => assert_eq!(pos, 3),
            e => panic!("unexpected {e}"),
        }
        match f2.parse_element("x1 x2^q").unwrap_err() {
            Error::Parse { pos, .. } => assert_eq!(pos, 6),
            e => panic!("unexpected {e}"),
        }
        assert!(f2.parse_element("(1,2)").is_err());
        let z2 = Group::parse("zd:2").unwrap();
        assert!(z2.parse_element("(1,2,3)").is_err());
    }
}
