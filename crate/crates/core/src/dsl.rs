//! Line-oriented text format for presentations.
//!
//! ```text
//! algebra E3
//! vertices v
//! arrow a : v -> v
//! arrow b : v -> v
//! relations
//!   a.b
//!   b.a
//!   a.a - b.b
//! end
//! ```

use crate::error::{Error, Result};
use crate::linalg::Scalar;
use crate::presentation::{relation_to_string, Presentation};
use crate::quiver::{Path, Quiver};

use num_bigint::BigInt;
use num_traits::One;

fn syntax(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Syntax {
        line,
        column,
        message: message.into(),
    }
}

fn at(line: usize) -> impl Fn(Error) -> Error {
    move |e| match e {
        e @ (Error::Syntax { .. } | Error::AtLine { .. }) => e,
        e => Error::AtLine {
            line,
            error: Box::new(e),
        },
    }
}

fn is_vertex_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || matches!(c, '_' | '.' | '\'')
}

fn is_arrow_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_'
}

fn is_arrow_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || matches!(c, '_' | '\'')
}

fn check_ident(line: usize, column: usize, ident: &str, vertex: bool) -> Result<()> {
    let ok = if vertex {
        !ident.is_empty() && ident.chars().all(is_vertex_char)
    } else {
        ident.chars().next().is_some_and(is_arrow_start) && ident.chars().all(is_arrow_char)
    };
    if ok {
        Ok(())
    } else {
        let kind = if vertex { "vertex" } else { "arrow" };
        Err(syntax(line, column, format!("invalid {kind} identifier `{ident}`")))
    }
}

/// Column (1-based) of the first occurrence of `needle` in `line`.
fn column_of(line: &str, needle: &str) -> usize {
    line.find(needle).map_or(1, |i| line[..i].chars().count() + 1)
}

/// Parses a single presentation.
pub fn parse(text: &str) -> Result<Presentation> {
    let lines: Vec<&str> = text.lines().collect();
    parse_lines(&lines, 0)
}

/// Parses a file holding several presentations, each introduced by its own
/// `algebra` line.
pub fn parse_many(text: &str) -> Result<Vec<Presentation>> {
    let lines: Vec<&str> = text.lines().collect();
    let starts: Vec<usize> = lines
        .iter()
        .enumerate()
        .filter(|(_, l)| strip_comment(l).split_whitespace().next() == Some("algebra"))
        .map(|(i, _)| i)
        .collect();
    let mut out = Vec::with_capacity(starts.len());
    for (k, &start) in starts.iter().enumerate() {
        let end = starts.get(k + 1).copied().unwrap_or(lines.len());
        out.push(parse_lines(&lines[start..end], start)?);
    }
    Ok(out)
}

fn strip_comment(line: &str) -> &str {
    line.split('#').next().unwrap_or("")
}

fn parse_lines(lines: &[&str], offset: usize) -> Result<Presentation> {
    let mut name: Option<String> = None;
    let mut quiver = Quiver::new();
    let mut relations: Vec<Vec<(Scalar, Path)>> = Vec::new();
    let mut relation_lines: Vec<usize> = Vec::new();
    let mut in_relations = false;
    let mut closed = false;

    for (i, raw) in lines.iter().enumerate() {
        let line_no = offset + i + 1;
        let line = strip_comment(raw);
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        let keyword = trimmed.split_whitespace().next().unwrap_or("");
        let rest = trimmed[keyword.len()..].trim();
        if in_relations {
            if keyword == "end" && rest.is_empty() {
                in_relations = false;
                closed = true;
                continue;
            }
            let terms = parse_relation(&quiver, line, line_no)?;
            relations.push(terms);
            relation_lines.push(line_no);
            continue;
        }
        if name.is_none() && keyword != "algebra" {
            return Err(syntax(line_no, column_of(line, keyword), "expected `algebra NAME`"));
        }
        match keyword {
            "algebra" => {
                if name.is_some() {
                    return Err(syntax(line_no, column_of(line, keyword), "second `algebra` line"));
                }
                let mut parts = rest.split_whitespace();
                let (Some(n), None) = (parts.next(), parts.next()) else {
                    return Err(syntax(line_no, column_of(line, keyword), "expected `algebra NAME`"));
                };
                name = Some(n.to_string());
            }
            "vertices" => {
                if closed {
                    return Err(syntax(line_no, 1, "declarations after the relations block"));
                }
                for v in rest.split_whitespace() {
                    check_ident(line_no, column_of(line, v), v, true)?;
                    quiver.add_vertex(v).map_err(at(line_no))?;
                }
            }
            "arrow" => {
                if closed {
                    return Err(syntax(line_no, 1, "declarations after the relations block"));
                }
                let Some((arrow, ends)) = rest.split_once(':') else {
                    return Err(syntax(line_no, column_of(line, rest), "expected `arrow ID : ID -> ID`"));
                };
                let Some((s, t)) = ends.split_once("->") else {
                    return Err(syntax(line_no, column_of(line, ends), "expected `->`"));
                };
                let (arrow, s, t) = (arrow.trim(), s.trim(), t.trim());
                check_ident(line_no, column_of(line, arrow), arrow, false)?;
                check_ident(line_no, column_of(line, s), s, true)?;
                check_ident(line_no, column_of(line, t), t, true)?;
                let s = quiver.vertex(s).map_err(at(line_no))?;
                let t = quiver.vertex(t).map_err(at(line_no))?;
                quiver.add_arrow(arrow, s, t).map_err(at(line_no))?;
            }
            "relations" => {
                if closed {
                    return Err(syntax(line_no, 1, "second relations block"));
                }
                if !rest.is_empty() {
                    return Err(syntax(line_no, column_of(line, rest), "unexpected text after `relations`"));
                }
                in_relations = true;
            }
            other => {
                return Err(syntax(line_no, column_of(line, other), format!("unknown keyword `{other}`")));
            }
        }
    }
    if in_relations {
        return Err(syntax(offset + lines.len(), 1, "relations block is missing `end`"));
    }
    let Some(name) = name else {
        return Err(syntax(offset + 1, 1, "expected `algebra NAME`"));
    };
    // Validate relations one at a time so errors carry their line.
    for (terms, &line_no) in relations.iter().zip(&relation_lines) {
        Presentation::new(&name, quiver.clone(), vec![terms.clone()]).map_err(at(line_no))?;
    }
    Presentation::new(&name, quiver, relations)
}

/// Parses one relation line into signed terms.
fn parse_relation(quiver: &Quiver, line: &str, line_no: usize) -> Result<Vec<(Scalar, Path)>> {
    let chars: Vec<char> = line.chars().collect();
    let mut pos = 0;
    let skip_ws = |pos: &mut usize| {
        while *pos < chars.len() && chars[*pos].is_whitespace() {
            *pos += 1;
        }
    };
    let digits = |pos: &mut usize| -> Option<BigInt> {
        let start = *pos;
        while *pos < chars.len() && chars[*pos].is_ascii_digit() {
            *pos += 1;
        }
        (start < *pos).then(|| chars[start..*pos].iter().collect::<String>().parse().expect("digits"))
    };

    let mut terms = Vec::new();
    loop {
        skip_ws(&mut pos);
        let mut negative = false;
        match chars.get(pos) {
            Some('-') => {
                negative = true;
                pos += 1;
            }
            Some('+') if !terms.is_empty() => pos += 1,
            Some(c) if !terms.is_empty() => {
                return Err(syntax(line_no, pos + 1, format!("unexpected `{c}`")));
            }
            _ => {}
        }
        skip_ws(&mut pos);
        if pos >= chars.len() {
            return Err(syntax(line_no, pos + 1, "expected a term"));
        }
        let mut coeff = Scalar::one();
        if chars[pos].is_ascii_digit() {
            let num = digits(&mut pos).expect("at least one digit");
            let mut den = BigInt::one();
            if chars.get(pos) == Some(&'/') {
                pos += 1;
                den = digits(&mut pos).ok_or_else(|| syntax(line_no, pos + 1, "expected a denominator"))?;
                if den == BigInt::from(0) {
                    return Err(syntax(line_no, pos, "zero denominator"));
                }
            }
            skip_ws(&mut pos);
            if chars.get(pos) != Some(&'*') {
                return Err(syntax(line_no, pos + 1, "expected `*` after the coefficient"));
            }
            pos += 1;
            skip_ws(&mut pos);
            coeff = Scalar::new(num, den);
        }
        let start = pos;
        while pos < chars.len() && is_vertex_char(chars[pos]) {
            pos += 1;
        }
        if start == pos {
            return Err(syntax(line_no, pos + 1, "expected a path"));
        }
        let text: String = chars[start..pos].iter().collect();
        let path = quiver.parse_path(&text).map_err(at(line_no))?;
        if path.len() < 2 {
            return Err(at(line_no)(Error::NonAdmissibleGenerator {
                relation: line.trim().to_string(),
                term: text,
            }));
        }
        terms.push((if negative { -coeff } else { coeff }, path));
        skip_ws(&mut pos);
        if pos >= chars.len() {
            return Ok(terms);
        }
    }
}

/// Prints a presentation in canonical form; `parse` inverts it.
pub fn print(p: &Presentation) -> String {
    let q = p.quiver();
    let mut out = format!("algebra {}\n", p.name());
    out.push_str("vertices");
    for v in q.vertices() {
        out.push(' ');
        out.push_str(q.vertex_name(v));
    }
    out.push('\n');
    for a in q.arrows() {
        out.push_str(&format!(
            "arrow {} : {} -> {}\n",
            q.arrow_name(a),
            q.vertex_name(q.source(a)),
            q.vertex_name(q.target(a))
        ));
    }
    if !p.relations().is_empty() {
        out.push_str("relations\n");
        for r in p.relations() {
            out.push_str("  ");
            out.push_str(&relation_to_string(q, r));
            out.push('\n');
        }
        out.push_str("end\n");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::int;

    const E3: &str = "algebra E3\nvertices v\narrow a : v -> v\narrow b : v -> v\nrelations\n  a.b\n  b.a\n  a.a - b.b\nend\n";

    #[test]
    fn kronecker_file() {
        let p = parse("algebra K # two arrows\nvertices 1 2\narrow a : 1 -> 2\narrow b : 1 -> 2\n").unwrap();
        assert_eq!(p.quiver().vertex_count(), 2);
        assert_eq!(p.quiver().arrow_count(), 2);
        assert!(p.relations().is_empty());
    }

    #[test]
    fn binomial_relation() {
        let p = parse(E3).unwrap();
        let r = &p.relations()[2];
        let coeffs: Vec<Scalar> = r.terms().iter().map(|(c, _)| c.clone()).collect();
        assert_eq!(coeffs, [int(1), int(-1)]);
    }

    #[test]
    fn short_term_is_semantic_error() {
        let e = parse("algebra L\nvertices v\narrow a : v -> v\nrelations\na\nend\n").unwrap_err();
        assert!(matches!(e, Error::AtLine { line: 5, .. }));
        assert!(matches!(e.root(), Error::NonAdmissibleGenerator { .. }));
    }

    #[test]
    fn syntax_errors_have_positions() {
        let e = parse("algebra L\nvertices v\narrow a : v -> v\nrelations\n  2 a.a\nend\n").unwrap_err();
        assert!(matches!(e, Error::Syntax { line: 5, column: 5, .. }), "{e:?}");
        let e = parse("algebra L\nvertices v\nrelations\n").unwrap_err();
        assert!(matches!(e, Error::Syntax { .. }));
        let e = parse("vertices v\n").unwrap_err();
        assert!(matches!(e, Error::Syntax { line: 1, .. }));
    }

    #[test]
    fn semantic_errors() {
        let e = parse("algebra L\nvertices v\narrow a : v -> w\n").unwrap_err();
        assert!(matches!(e.root(), Error::UnknownVertex(_)));
        let e = parse("algebra L\nvertices v w\narrow a : v -> w\nrelations\na.a\nend\n").unwrap_err();
        assert!(matches!(e.root(), Error::NotComposable { .. }));
        let e = parse(
            "algebra L\nvertices 1 2 3\narrow a : 1 -> 2\narrow b : 2 -> 3\narrow c : 1 -> 2\narrow d : 2 -> 2\nrelations\na.b - c.d\nend\n",
        )
        .unwrap_err();
        assert!(matches!(e.root(), Error::NonUniformRelation(_)));
    }

    #[test]
    fn coefficients_and_signs() {
        let p = parse(
            "algebra C\nvertices v\narrow a : v -> v\narrow b : v -> v\nrelations\n-2*a.a + 2/3*b.b - a.b\nend\n",
        )
        .unwrap();
        let text = print(&p);
        assert!(text.contains("  a.a - 1/3*b.b + 1/2*a.b\n"), "{text}");
        assert_eq!(parse(&text).unwrap(), p);
    }

    #[test]
    fn round_trip() {
        let p = parse(E3).unwrap();
        assert_eq!(print(&p), E3);
        assert_eq!(parse(&print(&p)).unwrap(), p);
    }

    #[test]
    fn dotted_vertex_names() {
        let text = "algebra S\nvertices v.1 v.2\narrow a : v.1 -> v.2\n";
        let p = parse(text).unwrap();
        assert_eq!(print(&p), text);
    }

    #[test]
    fn many() {
        let text = format!("{E3}\nalgebra K\nvertices 1 2\narrow a : 1 -> 2\n");
        let all = parse_many(&text).unwrap();
        assert_eq!(all.len(), 2);
        assert_eq!(all[1].name(), "K");
    }
}
