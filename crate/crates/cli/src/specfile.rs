//! Line-oriented description of matrices over free entry families.
//!
//! ```text
//! # 2x2 circular block
//! order 6
//! dim 2
//! matrices 1
//! circular r=1 i=1 j=2 radius 2/1
//! cumulant 1:1,1 1:2,2 = 1/2
//! ```

use std::fmt;
use std::str::FromStr;

use ncfree_core::corpus::{self, Entry, EntryModel};
use ncfree_core::rational::{self, Rat};
use num_traits::Zero;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
#[error("line {line}: {message}")]
pub struct SpecError {
    pub line: usize,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Declaration {
    Cumulant {
        entries: Vec<Entry>,
        value: Rat,
    },
    Semicircular {
        r: usize,
        i: usize,
        radius: Rat,
    },
    Circular {
        r: usize,
        i: usize,
        j: usize,
        radius: Rat,
    },
}

impl fmt::Display for Declaration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Declaration::Cumulant { entries, value } => write!(
                f,
                "cumulant {} = {}",
                corpus::format_entries(entries),
                rational::format_rat(value)
            ),
            Declaration::Semicircular { r, i, radius } => {
                write!(
                    f,
                    "semicircular r={r} i={i} radius {}",
                    rational::format_rat(radius)
                )
            }
            Declaration::Circular { r, i, j, radius } => {
                write!(
                    f,
                    "circular r={r} i={i} j={j} radius {}",
                    rational::format_rat(radius)
                )
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecFile {
    pub order: usize,
    pub dim: usize,
    pub matrices: usize,
    pub declarations: Vec<Declaration>,
}

impl SpecFile {
    /// Cumulant table of the declared entries; also validates ranges and
    /// rejects keys declared twice.
    pub fn entry_model(&self) -> Result<EntryModel, SpecError> {
        self.entry_model_with_lines(&vec![0; self.declarations.len()])
    }

    fn entry_model_with_lines(&self, lines: &[usize]) -> Result<EntryModel, SpecError> {
        let mut model =
            EntryModel::new(self.dim, self.matrices, self.order).map_err(|e| SpecError {
                line: 0,
                message: e.to_string(),
            })?;
        for (decl, &line) in self.declarations.iter().zip(lines) {
            let result = match decl {
                Declaration::Cumulant { entries, value } => {
                    if entries.len() > self.order {
                        Err(format!(
                            "{} entries exceed order {}",
                            entries.len(),
                            self.order
                        ))
                    } else if value.is_zero() {
                        Err("cumulant value must be nonzero".into())
                    } else {
                        model
                            .set_cumulant(entries, value.clone())
                            .map_err(|e| e.to_string())
                    }
                }
                Declaration::Semicircular { r, i, radius } => {
                    if self.order < 2 {
                        Err("shorthand needs order >= 2".into())
                    } else if radius <= &Rat::zero() {
                        Err("radius must be positive".into())
                    } else {
                        model
                            .semicircular(*r, *i, radius)
                            .map_err(|e| e.to_string())
                    }
                }
                Declaration::Circular { r, i, j, radius } => {
                    if self.order < 2 {
                        Err("shorthand needs order >= 2".into())
                    } else if radius <= &Rat::zero() {
                        Err("radius must be positive".into())
                    } else {
                        model
                            .circular(*r, *i, *j, radius)
                            .map_err(|e| e.to_string())
                    }
                }
            };
            result.map_err(|message| SpecError { line, message })?;
        }
        Ok(model)
    }

    /// Radii of a single Gaussian block, when the file is one.
    pub fn radii(&self) -> Result<Vec<Vec<Rat>>, String> {
        if self.matrices != 1 {
            return Err("a Gaussian block needs exactly one matrix".into());
        }
        let mut radii = vec![vec![Rat::zero(); self.dim]; self.dim];
        for decl in &self.declarations {
            match decl {
                Declaration::Semicircular { i, radius, .. } => radii[i - 1][i - 1] = radius.clone(),
                Declaration::Circular { i, j, radius, .. } => {
                    radii[i - 1][j - 1] = radius.clone();
                    radii[j - 1][i - 1] = radius.clone();
                }
                Declaration::Cumulant { .. } => {
                    return Err(
                        "explicit cumulants cannot be sampled; use semicircular/circular".into(),
                    )
                }
            }
        }
        Ok(radii)
    }

    pub fn emit(&self) -> String {
        let mut out = format!(
            "order {}\ndim {}\nmatrices {}\n",
            self.order, self.dim, self.matrices
        );
        for d in &self.declarations {
            out.push_str(&d.to_string());
            out.push('\n');
        }
        out
    }
}

impl FromStr for SpecFile {
    type Err = SpecError;

    fn from_str(text: &str) -> Result<Self, SpecError> {
        parse_spec(text)
    }
}

fn err<T>(line: usize, message: impl Into<String>) -> Result<T, SpecError> {
    Err(SpecError {
        line,
        message: message.into(),
    })
}

fn parse_int(line: usize, s: &str) -> Result<usize, SpecError> {
    s.parse()
        .or_else(|_| err(line, format!("expected a positive integer, found {s:?}")))
}

fn parse_value(line: usize, s: &str) -> Result<Rat, SpecError> {
    rational::parse_rat(s).map_or_else(|| err(line, format!("expected p/q, found {s:?}")), Ok)
}

fn parse_entry(line: usize, s: &str) -> Result<Entry, SpecError> {
    let bad = || err(line, format!("expected r:i,j, found {s:?}"));
    let Some((r, ij)) = s.split_once(':') else {
        return bad();
    };
    let Some((i, j)) = ij.split_once(',') else {
        return bad();
    };
    match (r.parse(), i.parse(), j.parse()) {
        (Ok(r), Ok(i), Ok(j)) => Ok((r, i, j)),
        _ => bad(),
    }
}

fn parse_key(line: usize, token: Option<&str>, key: &str) -> Result<usize, SpecError> {
    let Some(t) = token else {
        return err(line, format!("missing {key}=<int>"));
    };
    match t.strip_prefix(key).and_then(|rest| rest.strip_prefix('=')) {
        Some(v) => parse_int(line, v),
        None => err(line, format!("expected {key}=<int>, found {t:?}")),
    }
}

fn parse_radius(line: usize, tokens: &[&str]) -> Result<Rat, SpecError> {
    match tokens {
        ["radius", v] => parse_value(line, v),
        _ => err(line, "expected `radius <p>/<q>` at end of line"),
    }
}

pub fn parse_spec(text: &str) -> Result<SpecFile, SpecError> {
    let mut order = None;
    let mut dim = None;
    let mut matrices = None;
    let mut declarations = Vec::new();
    let mut lines = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let content = raw.split('#').next().unwrap().trim();
        if content.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = content.split_whitespace().collect();
        match tokens[0] {
            "order" | "dim" | "matrices" => {
                let [key, value] = tokens[..] else {
                    return err(line, format!("expected `{} <int>`", tokens[0]));
                };
                let v = parse_int(line, value)?;
                if v == 0 {
                    return err(line, format!("{key} must be positive"));
                }
                let slot = match key {
                    "order" => &mut order,
                    "dim" => &mut dim,
                    _ => &mut matrices,
                };
                if slot.replace(v).is_some() {
                    return err(line, format!("{key} given twice"));
                }
            }
            "cumulant" => {
                let Some(eq) = tokens.iter().position(|&t| t == "=") else {
                    return err(line, "expected `= <p>/<q>`");
                };
                if eq == 1 || eq + 2 != tokens.len() {
                    return err(line, "expected `cumulant <r>:<i>,<j> ... = <p>/<q>`");
                }
                let entries = tokens[1..eq]
                    .iter()
                    .map(|t| parse_entry(line, t))
                    .collect::<Result<Vec<_>, _>>()?;
                let value = parse_value(line, tokens[eq + 1])?;
                declarations.push(Declaration::Cumulant { entries, value });
                lines.push(line);
            }
            "semicircular" => {
                if tokens.len() != 5 {
                    return err(line, "expected `semicircular r=<r> i=<i> radius <p>/<q>`");
                }
                let r = parse_key(line, tokens.get(1).copied(), "r")?;
                let i = parse_key(line, tokens.get(2).copied(), "i")?;
                let radius = parse_radius(line, &tokens[3..])?;
                declarations.push(Declaration::Semicircular { r, i, radius });
                lines.push(line);
            }
            "circular" => {
                if tokens.len() != 6 {
                    return err(line, "expected `circular r=<r> i=<i> j=<j> radius <p>/<q>`");
                }
                let r = parse_key(line, tokens.get(1).copied(), "r")?;
                let i = parse_key(line, tokens.get(2).copied(), "i")?;
                let j = parse_key(line, tokens.get(3).copied(), "j")?;
                let radius = parse_radius(line, &tokens[4..])?;
                declarations.push(Declaration::Circular { r, i, j, radius });
                lines.push(line);
            }
            other => return err(line, format!("unknown directive {other:?}")),
        }
    }
    let last = text.lines().count().max(1);
    let (Some(order), Some(dim), Some(matrices)) = (order, dim, matrices) else {
        return err(last, "missing one of `order`, `dim`, `matrices`");
    };
    let spec = SpecFile {
        order,
        dim,
        matrices,
        declarations,
    };
    spec.entry_model_with_lines(&lines)?;
    Ok(spec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use ncfree_core::rational::{int, rat};
    use proptest::prelude::*;

    const CIRCULAR: &str = "order 4\ndim 2\nmatrices 1\ncircular r=1 i=1 j=2 radius 2/1\n";

    #[test]
    fn minimal_file() {
        let spec = parse_spec(CIRCULAR).unwrap();
        assert_eq!(spec.declarations.len(), 1);
        assert_eq!(spec.entry_model().unwrap().declarations().len(), 2);
    }

    #[test]
    fn explicit_cumulant() {
        let text = "order 4\ndim 2\nmatrices 1\ncumulant 1:1,2 1:2,1 = 1/1  # c c*\n";
        let spec = parse_spec(text).unwrap();
        assert_eq!(
            spec.declarations,
            vec![Declaration::Cumulant {
                entries: vec![(1, 1, 2), (1, 2, 1)],
                value: int(1)
            }]
        );
    }

    #[test]
    fn errors_carry_line_numbers() {
        let e = parse_spec("order 4\ndim 2\nmatrices 1\ncumulant 1:3,1 = 1\n").unwrap_err();
        assert_eq!(e.line, 4);
        let e = parse_spec("order 4\ndim 2\nmatrices 1\n\ncumulant 1:2,1 = x\n").unwrap_err();
        assert_eq!(e.line, 5);
        let e = parse_spec("order 4\norder 5\n").unwrap_err();
        assert_eq!(e.line, 2);
        let e = parse_spec("order 4\ndim 2\n").unwrap_err();
        assert!(e.message.contains("missing"));
    }

    #[test]
    fn shorthand_collides_with_explicit_key() {
        let text = format!("{CIRCULAR}cumulant 1:2,1 1:1,2 = 1/3\n");
        let e = parse_spec(&text).unwrap_err();
        assert_eq!(e.line, 5);
        assert!(e.message.contains("declared twice"), "{}", e.message);
    }

    #[test]
    fn radii_of_gaussian_block() {
        let text = "order 4\ndim 2\nmatrices 1\nsemicircular r=1 i=1 radius 2\ncircular r=1 i=1 j=2 radius 1/2\n";
        let spec = parse_spec(text).unwrap();
        assert_eq!(
            spec.radii().unwrap(),
            vec![vec![int(2), rat(1, 2)], vec![rat(1, 2), int(0)]]
        );
    }

    fn arb_spec() -> impl Strategy<Value = SpecFile> {
        (2usize..=6, 1usize..=3, 1usize..=2).prop_flat_map(|(order, dim, matrices)| {
            let entry = (1..=matrices, 1..=dim, 1..=dim);
            let value = (-5i64..=5, 1i64..=4)
                .prop_filter("nonzero", |(p, _)| *p != 0)
                .prop_map(|(p, q)| rat(p, q));
            let cumulant = (proptest::collection::vec(entry, 1..=order), value)
                .prop_map(|(entries, value)| Declaration::Cumulant { entries, value });
            proptest::collection::vec(cumulant, 0..6).prop_map(move |decls| {
                // keep the first declaration of each key
                let mut seen = std::collections::HashSet::new();
                let declarations = decls
                    .into_iter()
                    .filter(|d| match d {
                        Declaration::Cumulant { entries, .. } => seen.insert(entries.clone()),
                        _ => true,
                    })
                    .collect();
                SpecFile {
                    order,
                    dim,
                    matrices,
                    declarations,
                }
            })
        })
    }

    proptest! {
        #[test]
        fn emit_then_parse_round_trips(spec in arb_spec()) {
            let text = spec.emit();
            prop_assert_eq!(parse_spec(&text).unwrap(), spec);
        }
    }
}
