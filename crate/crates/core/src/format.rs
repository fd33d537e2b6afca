//! Plain-text formats for families, cover lists, and tournament inputs.
//!
//! All three formats share the same lexical rules: `#` starts a comment that
//! runs to the end of the line, blank lines are ignored, and directives are
//! lowercase words followed by integer arguments. Parse errors carry 1-based
//! line numbers. Writing then re-parsing reproduces the value exactly,
//! including member order.
//!
//! Family files:
//!
//! ```text
//! ground 5          # required, before any member
//! uniform 2         # optional, before any member
//! 0 1
//! 1 4
//! ```
//!
//! A line containing only `-` denotes the empty set (only meaningful for
//! degenerate families such as serialized cover lists).
//!
//! Cover files prepend `covers-of <hex16> cap <k>` carrying the source
//! family's fingerprint and the size cap the enumeration ran under.
//!
//! Tournament files:
//!
//! ```text
//! vertices 3
//! n 3
//! arc 0 1
//! arc 1 2
//! arc 2 0
//! ```

use crate::constructions::{DigraphConstruction, Tournament};
use crate::error::{Error, Result};
use crate::family::SetFamily;
use crate::set::ElementSet;
use crate::transversal::CoverFamily;

fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    }
}

fn parse_usize(token: &str, line: usize, what: &str) -> Result<usize> {
    token.parse().map_err(|_| Error::Parse {
        line,
        message: format!("expected {what}, got {token:?}"),
    })
}

/// Significant (line-number, content) pairs after comment stripping.
fn significant_lines(text: &str) -> Vec<(usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, strip_comment(l).trim()))
        .filter(|(_, l)| !l.is_empty())
        .collect()
}

fn parse_set_line(tokens: &[&str], ground: usize, line: usize) -> Result<ElementSet> {
    if tokens == ["-"] {
        return Ok(ElementSet::EMPTY);
    }
    let mut set = ElementSet::EMPTY;
    for tok in tokens {
        let e = parse_usize(tok, line, "an element")?;
        if e >= ground {
            return Err(Error::Parse {
                line,
                message: format!("element {e} out of range for ground {ground}"),
            });
        }
        set = set.with(e);
    }
    Ok(set)
}

/// Parse a family file. Duplicated members are tolerated (the family records
/// how many were dropped so callers can warn); a `-` line makes the family
/// degenerate.
pub fn parse_family(text: &str) -> Result<SetFamily> {
    let mut ground: Option<usize> = None;
    let mut uniform: Option<usize> = None;
    let mut sets: Vec<ElementSet> = Vec::new();
    let mut degenerate = false;

    for (line, content) in significant_lines(text) {
        let tokens: Vec<&str> = content.split_whitespace().collect();
        match tokens[0] {
            "ground" => {
                if ground.is_some() {
                    return Err(Error::Parse { line, message: "duplicate ground directive".into() });
                }
                if !sets.is_empty() {
                    return Err(Error::Parse {
                        line,
                        message: "ground directive must precede members".into(),
                    });
                }
                if tokens.len() != 2 {
                    return Err(Error::Parse {
                        line,
                        message: "ground takes exactly one argument".into(),
                    });
                }
                ground = Some(parse_usize(tokens[1], line, "a ground size")?);
            }
            "uniform" => {
                if uniform.is_some() {
                    return Err(Error::Parse {
                        line,
                        message: "duplicate uniform directive".into(),
                    });
                }
                if !sets.is_empty() {
                    return Err(Error::Parse {
                        line,
                        message: "uniform directive must precede members".into(),
                    });
                }
                if tokens.len() != 2 {
                    return Err(Error::Parse {
                        line,
                        message: "uniform takes exactly one argument".into(),
                    });
                }
                uniform = Some(parse_usize(tokens[1], line, "a uniformity")?);
            }
            _ => {
                let g = ground.ok_or(Error::Parse {
                    line,
                    message: "member listed before the ground directive".into(),
                })?;
                let s = parse_set_line(&tokens, g, line)?;
                if s.is_empty() {
                    degenerate = true;
                }
                sets.push(s);
            }
        }
    }

    let ground = ground.ok_or(Error::Parse { line: 0, message: "missing ground directive".into() })?;
    if degenerate {
        SetFamily::new_degenerate(ground, sets, uniform)
    } else {
        SetFamily::new(ground, sets, uniform)
    }
}

fn write_set_line(s: ElementSet, out: &mut String) {
    if s.is_empty() {
        out.push('-');
    } else {
        let mut first = true;
        for e in s.iter() {
            if !first {
                out.push(' ');
            }
            out.push_str(&e.to_string());
            first = false;
        }
    }
    out.push('\n');
}

pub fn write_family(family: &SetFamily) -> String {
    let mut out = String::new();
    out.push_str(&format!("ground {}\n", family.ground()));
    if let Some(n) = family.uniformity() {
        out.push_str(&format!("uniform {n}\n"));
    }
    for &s in family.sets() {
        write_set_line(s, &mut out);
    }
    out
}

/// Parse a cover file: the `covers-of` header, a `ground` directive, then one
/// cover per line. Returns the covers together with the ground size they live
/// on.
pub fn parse_covers(text: &str) -> Result<(CoverFamily, usize)> {
    let lines = significant_lines(text);
    let Some(&(line, header)) = lines.first() else {
        return Err(Error::Parse { line: 0, message: "empty cover file".into() });
    };
    let tokens: Vec<&str> = header.split_whitespace().collect();
    if tokens.len() != 4 || tokens[0] != "covers-of" || tokens[2] != "cap" {
        return Err(Error::Parse {
            line,
            message: "expected header `covers-of <hex16> cap <k>`".into(),
        });
    }
    let source_hash = u64::from_str_radix(tokens[1], 16).map_err(|_| Error::Parse {
        line,
        message: format!("bad fingerprint {:?}", tokens[1]),
    })?;
    let cap = parse_usize(tokens[3], line, "a size cap")?;

    let mut ground: Option<usize> = None;
    let mut covers = Vec::new();
    for &(line, content) in &lines[1..] {
        let tokens: Vec<&str> = content.split_whitespace().collect();
        if tokens[0] == "ground" {
            if ground.is_some() {
                return Err(Error::Parse { line, message: "duplicate ground directive".into() });
            }
            if tokens.len() != 2 {
                return Err(Error::Parse {
                    line,
                    message: "ground takes exactly one argument".into(),
                });
            }
            ground = Some(parse_usize(tokens[1], line, "a ground size")?);
        } else {
            let g = ground.ok_or(Error::Parse {
                line,
                message: "cover listed before the ground directive".into(),
            })?;
            covers.push(parse_set_line(&tokens, g, line)?);
        }
    }
    let ground = ground.ok_or(Error::Parse { line: 0, message: "missing ground directive".into() })?;
    // Re-validate the ground bound via the family constructor's checks.
    SetFamily::new_degenerate(ground, covers.clone(), None)?;
    Ok((CoverFamily::from_parts(covers, cap, source_hash)?, ground))
}

pub fn write_covers(covers: &CoverFamily, ground: usize) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "covers-of {} cap {}\n",
        covers.source_hash_hex(),
        covers.size_cap()
    ));
    out.push_str(&format!("ground {ground}\n"));
    for &c in covers.covers() {
        write_set_line(c, &mut out);
    }
    out
}

/// Parse a tournament file into a ready construction. The orientation must be
/// complete: exactly one arc per vertex pair (checked after all arcs are
/// read).
pub fn parse_digraph(text: &str) -> Result<DigraphConstruction> {
    let mut vertices: Option<usize> = None;
    let mut n: Option<usize> = None;
    let mut arcs: Vec<(usize, usize)> = Vec::new();

    for (line, content) in significant_lines(text) {
        let tokens: Vec<&str> = content.split_whitespace().collect();
        match tokens[0] {
            "vertices" => {
                if vertices.is_some() {
                    return Err(Error::Parse {
                        line,
                        message: "duplicate vertices directive".into(),
                    });
                }
                if tokens.len() != 2 {
                    return Err(Error::Parse {
                        line,
                        message: "vertices takes exactly one argument".into(),
                    });
                }
                vertices = Some(parse_usize(tokens[1], line, "a vertex count")?);
            }
            "n" => {
                if n.is_some() {
                    return Err(Error::Parse { line, message: "duplicate n directive".into() });
                }
                if tokens.len() != 2 {
                    return Err(Error::Parse {
                        line,
                        message: "n takes exactly one argument".into(),
                    });
                }
                n = Some(parse_usize(tokens[1], line, "a uniformity")?);
            }
            "arc" => {
                let m = vertices.ok_or(Error::Parse {
                    line,
                    message: "arc listed before the vertices directive".into(),
                })?;
                if tokens.len() != 3 {
                    return Err(Error::Parse {
                        line,
                        message: "arc takes exactly two arguments".into(),
                    });
                }
                let i = parse_usize(tokens[1], line, "a vertex")?;
                let j = parse_usize(tokens[2], line, "a vertex")?;
                if i >= m || j >= m {
                    return Err(Error::Parse {
                        line,
                        message: format!("arc ({i}, {j}) out of range for {m} vertices"),
                    });
                }
                arcs.push((i, j));
            }
            other => {
                return Err(Error::Parse {
                    line,
                    message: format!("unknown directive {other:?}"),
                });
            }
        }
    }

    let m =
        vertices.ok_or(Error::Parse { line: 0, message: "missing vertices directive".into() })?;
    let n = n.ok_or(Error::Parse { line: 0, message: "missing n directive".into() })?;
    DigraphConstruction::new(Tournament::new(m, &arcs)?, n)
}

pub fn write_digraph(d: &DigraphConstruction) -> String {
    let mut out = String::new();
    out.push_str(&format!("vertices {}\n", d.vertex_count()));
    out.push_str(&format!("n {}\n", d.uniformity()));
    for (i, j) in d.tournament().arcs() {
        out.push_str(&format!("arc {i} {j}\n"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::example1_linear;
    use crate::transversal::{enumerate_minimal_covers, EnumerationLimits};

    fn es(elems: &[usize]) -> ElementSet {
        ElementSet::from_elements(elems.iter().copied()).unwrap()
    }

    #[test]
    fn family_round_trip_preserves_order() {
        let f = SetFamily::new(5, vec![es(&[1, 4]), es(&[0, 2]), es(&[2, 4])], Some(2)).unwrap();
        let text = write_family(&f);
        assert_eq!(text, "ground 5\nuniform 2\n1 4\n0 2\n2 4\n");
        let back = parse_family(&text).unwrap();
        assert_eq!(back, f);
        assert_eq!(write_family(&back), text);
    }

    #[test]
    fn comments_and_blanks_ignored() {
        let text = "# a family\n\nground 4   # four elements\n0 1 # first\n\n  2 3\n";
        let f = parse_family(text).unwrap();
        assert_eq!(f.ground(), 4);
        assert_eq!(f.sets(), &[es(&[0, 1]), es(&[2, 3])]);
        assert_eq!(f.uniformity(), None);
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let cases: &[(&str, usize)] = &[
            ("0 1\nground 4\n", 1),           // member before ground
            ("ground 4\nground 5\n", 2),      // duplicate directive
            ("ground 4\n0 x\n", 2),           // bad element token
            ("ground 4\n0 7\n", 2),           // out of range
            ("ground 4\n0 1\nuniform 2\n", 3), // uniform after members
            ("ground four\n", 1),             // bad ground value
        ];
        for (text, expected_line) in cases {
            match parse_family(text) {
                Err(Error::Parse { line, .. }) => {
                    assert_eq!(line, *expected_line, "input: {text:?}")
                }
                other => panic!("expected parse error for {text:?}, got {other:?}"),
            }
        }
        assert!(matches!(
            parse_family("# nothing\n"),
            Err(Error::Parse { line: 0, .. })
        ));
    }

    #[test]
    fn uniformity_mismatch_is_rejected() {
        assert!(parse_family("ground 4\nuniform 2\n0 1 2\n").is_err());
    }

    #[test]
    fn empty_set_line_round_trips() {
        let f = SetFamily::new_degenerate(3, vec![ElementSet::EMPTY, es(&[1])], None).unwrap();
        let text = write_family(&f);
        assert_eq!(text, "ground 3\n-\n1\n");
        assert_eq!(parse_family(&text).unwrap(), f);
    }

    #[test]
    fn cover_file_round_trip() {
        let f = example1_linear(3).unwrap().build_family().unwrap();
        let covers = enumerate_minimal_covers(&f, 6, &EnumerationLimits::default()).unwrap();
        let text = write_covers(&covers, f.ground());
        let (back, ground) = parse_covers(&text).unwrap();
        assert_eq!(ground, f.ground());
        assert_eq!(back, covers);
        assert_eq!(write_covers(&back, ground), text);
        assert!(text.starts_with(&format!("covers-of {} cap 6\n", covers.source_hash_hex())));
    }

    #[test]
    fn cover_header_is_validated() {
        assert!(matches!(
            parse_covers("covers-of xyz cap 3\nground 2\n0\n"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(
            parse_covers("ground 2\n0\n"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(parse_covers(""), Err(Error::Parse { line: 0, .. })));
    }

    #[test]
    fn digraph_round_trip() {
        let text = "vertices 3\nn 3\narc 0 1\narc 1 2\narc 2 0\n";
        let d = parse_digraph(text).unwrap();
        assert_eq!(d.vertex_count(), 3);
        assert_eq!(d.uniformity(), 3);
        assert_eq!(write_digraph(&d), text);
    }

    #[test]
    fn digraph_errors() {
        // Incomplete orientation: caught after reading (no line number).
        assert!(matches!(
            parse_digraph("vertices 3\nn 3\narc 0 1\n"),
            Err(Error::Precondition(_))
        ));
        // Out-of-range arc: caught at its line.
        assert!(matches!(
            parse_digraph("vertices 2\nn 2\narc 0 5\n"),
            Err(Error::Parse { line: 3, .. })
        ));
        // Arc before vertices.
        assert!(matches!(
            parse_digraph("arc 0 1\nvertices 2\nn 2\n"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(
            parse_digraph("vertices 2\nn 2\nedge 0 1\n"),
            Err(Error::Parse { line: 3, .. })
        ));
    }
}
