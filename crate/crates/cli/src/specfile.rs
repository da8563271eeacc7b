//! Declarative spec files for Lie algebras and finite-dimensional modules.
//!
//! Grammar (one declaration per line, `#` starts a comment):
//!   algebra an | sl2 | <name> generators X Y ...
//!   bracket X Y = <scalar> <gen> [+ <scalar> <gen>]...
//!   subalgebra X Y ...
//!   module <name> dim <d>
//!   action X = matrix[[a, b], [c, d]]

use leafhodge::complex::ModuleSpec;
use leafhodge::lie::LieAlgebra;
use leafhodge::matrix::Matrix;
use leafhodge::scalar::Scalar;
use std::fmt;

#[derive(Debug)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "line {}, column {}: {}",
            self.line, self.column, self.message
        )
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug)]
pub struct SpecFile {
    pub algebra: LieAlgebra,
    pub subalgebra: Option<Vec<usize>>,
    pub module: Option<ModuleSpec>,
}

struct RawSpec {
    algebra_names: Option<Vec<String>>,
    builtin: Option<&'static str>,
    brackets: Vec<(usize, String, String, String)>,
    subalgebra: Option<(usize, Vec<String>)>,
    module_name: Option<String>,
    module_dim: Option<usize>,
    actions: Vec<(usize, String, String)>,
}

fn err(line: usize, column: usize, message: impl Into<String>) -> ParseError {
    ParseError {
        line,
        column,
        message: message.into(),
    }
}

pub fn parse(input: &str) -> Result<SpecFile, ParseError> {
    let mut raw = RawSpec {
        algebra_names: None,
        builtin: None,
        brackets: Vec::new(),
        subalgebra: None,
        module_name: None,
        module_dim: None,
        actions: Vec::new(),
    };
    for (idx, full_line) in input.lines().enumerate() {
        let lineno = idx + 1;
        let line = full_line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (keyword, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
        let rest = rest.trim();
        match keyword {
            "algebra" => {
                if raw.builtin.is_some() || raw.algebra_names.is_some() {
                    return Err(err(lineno, 1, "duplicate algebra declaration"));
                }
                match rest {
                    "an" => raw.builtin = Some("an"),
                    "sl2" => raw.builtin = Some("sl2"),
                    custom => {
                        let mut parts = custom.split_whitespace();
                        let _name = parts.next().ok_or_else(|| {
                            err(lineno, column_of(full_line, rest), "missing algebra name")
                        })?;
                        let gens_kw = parts.next();
                        if gens_kw != Some("generators") {
                            return Err(err(
                                lineno,
                                column_of(full_line, rest),
                                "expected `an`, `sl2`, or `<name> generators X Y ...`",
                            ));
                        }
                        let names: Vec<String> = parts.map(str::to_string).collect();
                        if names.is_empty() {
                            return Err(err(lineno, 1, "algebra needs at least one generator"));
                        }
                        raw.algebra_names = Some(names);
                    }
                }
            }
            "bracket" => {
                let (lhs, rhs) = rest.split_once('=').ok_or_else(|| {
                    err(
                        lineno,
                        column_of(full_line, rest),
                        "expected `bracket X Y = ...`",
                    )
                })?;
                let mut gens = lhs.split_whitespace();
                let x = gens.next().map(str::to_string);
                let y = gens.next().map(str::to_string);
                let (Some(x), Some(y)) = (x, y) else {
                    return Err(err(
                        lineno,
                        column_of(full_line, lhs),
                        "bracket needs two generators",
                    ));
                };
                if gens.next().is_some() {
                    return Err(err(
                        lineno,
                        column_of(full_line, lhs),
                        "bracket takes exactly two generators",
                    ));
                }
                raw.brackets.push((lineno, x, y, rhs.trim().to_string()));
            }
            "subalgebra" => {
                let names: Vec<String> = rest.split_whitespace().map(str::to_string).collect();
                if names.is_empty() {
                    return Err(err(lineno, 1, "subalgebra needs at least one generator"));
                }
                raw.subalgebra = Some((lineno, names));
            }
            "module" => {
                let mut parts = rest.split_whitespace();
                let name = parts
                    .next()
                    .ok_or_else(|| err(lineno, 1, "module needs a name"))?;
                if parts.next() != Some("dim") {
                    return Err(err(
                        lineno,
                        column_of(full_line, rest),
                        "expected `module <name> dim <d>`",
                    ));
                }
                let d: usize = parts
                    .next()
                    .and_then(|s| s.parse().ok())
                    .ok_or_else(|| err(lineno, column_of(full_line, rest), "bad dimension"))?;
                raw.module_name = Some(name.to_string());
                raw.module_dim = Some(d);
            }
            "action" => {
                let (gen, rhs) = rest.split_once('=').ok_or_else(|| {
                    err(
                        lineno,
                        column_of(full_line, rest),
                        "expected `action X = matrix[...]`",
                    )
                })?;
                raw.actions
                    .push((lineno, gen.trim().to_string(), rhs.trim().to_string()));
            }
            other => {
                return Err(err(
                    lineno,
                    column_of(full_line, keyword),
                    format!("unknown declaration {other:?}"),
                ))
            }
        }
    }

    let algebra = match (raw.builtin, &raw.algebra_names) {
        (Some("an"), _) => LieAlgebra::an(),
        (Some("sl2"), _) => LieAlgebra::sl2(),
        (None, Some(names)) => build_custom(names, &raw.brackets)?,
        _ => return Err(err(1, 1, "missing algebra declaration")),
    };
    if raw.builtin.is_some() && !raw.brackets.is_empty() {
        let line = raw.brackets[0].0;
        return Err(err(
            line,
            1,
            "built-in algebras already carry their brackets",
        ));
    }

    let subalgebra = match raw.subalgebra {
        None => None,
        Some((line, names)) => {
            let mut idx = Vec::new();
            for n in &names {
                idx.push(
                    algebra
                        .index_of(n)
                        .map_err(|e| err(line, 1, e.to_string()))?,
                );
            }
            algebra
                .check_subalgebra(&idx)
                .map_err(|e| err(line, 1, e.to_string()))?;
            Some(idx)
        }
    };

    let module = match (raw.module_name, raw.module_dim) {
        (None, _) => {
            if !raw.actions.is_empty() {
                let line = raw.actions[0].0;
                return Err(err(line, 1, "action without a module declaration"));
            }
            None
        }
        (Some(name), Some(dim)) => {
            let first_action_line = raw.actions.first().map_or(1, |(l, _, _)| *l);
            let mut actions: Vec<Option<Matrix>> = vec![None; algebra.dim()];
            for (line, gen, rhs) in &raw.actions {
                let gi = algebra
                    .index_of(gen)
                    .map_err(|e| err(*line, 1, e.to_string()))?;
                let m = parse_matrix(rhs, *line)?;
                if m.rows() != dim || m.cols() != dim {
                    return Err(err(*line, 1, format!("matrix must be {dim}×{dim}")));
                }
                actions[gi] = Some(m);
            }
            let actions: Vec<Matrix> = actions
                .into_iter()
                .enumerate()
                .map(|(i, a)| {
                    a.ok_or_else(|| {
                        err(
                            first_action_line,
                            1,
                            format!("missing action for generator {}", algebra.names()[i]),
                        )
                    })
                })
                .collect::<Result<_, _>>()?;
            Some(
                ModuleSpec::new(&algebra, &name, actions)
                    .map_err(|e| err(first_action_line, 1, e.to_string()))?,
            )
        }
        _ => return Err(err(1, 1, "incomplete module declaration")),
    };

    Ok(SpecFile {
        algebra,
        subalgebra,
        module,
    })
}

fn column_of(full_line: &str, fragment: &str) -> usize {
    if fragment.is_empty() {
        return 1;
    }
    full_line.find(fragment).map_or(1, |i| i + 1)
}

fn build_custom(
    names: &[String],
    brackets: &[(usize, String, String, String)],
) -> Result<LieAlgebra, ParseError> {
    let n = names.len();
    let index = |name: &str, line: usize| -> Result<usize, ParseError> {
        names
            .iter()
            .position(|x| x == name)
            .ok_or_else(|| err(line, 1, format!("unknown generator {name:?}")))
    };
    let mut table = vec![vec![vec![Scalar::zero(); n]; n]; n];
    for (line, x, y, rhs) in brackets {
        let xi = index(x, *line)?;
        let yi = index(y, *line)?;
        let combo = parse_combo(rhs, names, *line)?;
        for (k, coeff) in combo.iter().enumerate() {
            table[xi][yi][k] = coeff.clone();
            table[yi][xi][k] = -coeff.clone();
        }
    }
    LieAlgebra::new(names.to_vec(), table).map_err(|e| err(1, 1, e.to_string()))
}

/// `<scalar> <gen> [+|- <scalar> <gen>]...`, scalars optional (default 1);
/// `0` denotes the zero combination.
fn parse_combo(input: &str, names: &[String], line: usize) -> Result<Vec<Scalar>, ParseError> {
    let mut out = vec![Scalar::zero(); names.len()];
    let trimmed = input.trim();
    if trimmed == "0" {
        return Ok(out);
    }
    // Split into signed terms at top level.
    let mut terms: Vec<(Scalar, String)> = Vec::new();
    let mut sign = Scalar::one();
    let mut current = String::new();
    let flush = |current: &mut String, sign: &Scalar, terms: &mut Vec<(Scalar, String)>| {
        if !current.trim().is_empty() {
            terms.push((sign.clone(), current.trim().to_string()));
            current.clear();
        }
    };
    let mut chars = trimmed.chars().peekable();
    while let Some(c) = chars.next() {
        match c {
            '+' => {
                flush(&mut current, &sign, &mut terms);
                sign = Scalar::one();
            }
            '-' if current.trim().is_empty() && terms.is_empty() && chars.peek().is_some() => {
                // leading minus
                sign = -Scalar::one();
            }
            '-' => {
                flush(&mut current, &sign, &mut terms);
                sign = -Scalar::one();
            }
            _ => current.push(c),
        }
    }
    flush(&mut current, &sign, &mut terms);
    for (sign, term) in terms {
        // The last `*`- or space-separated token naming a generator is the
        // generator; the rest is the scalar.
        let tokens: Vec<&str> = term
            .split(|c: char| c == '*' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .collect();
        let Some(gen_pos) = tokens.iter().rposition(|t| names.iter().any(|n| n == t)) else {
            return Err(err(line, 1, format!("no generator in term {term:?}")));
        };
        let gen_idx = names
            .iter()
            .position(|n| n == tokens[gen_pos])
            .expect("matched above");
        let scalar_text = tokens
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != gen_pos)
            .map(|(_, t)| *t)
            .collect::<Vec<_>>()
            .join("*");
        let coeff = if scalar_text.is_empty() {
            Scalar::one()
        } else {
            Scalar::parse(&scalar_text).map_err(|e| err(line, 1, e.to_string()))?
        };
        out[gen_idx] = out[gen_idx].clone() + sign * coeff;
    }
    Ok(out)
}

fn parse_matrix(input: &str, line: usize) -> Result<Matrix, ParseError> {
    let trimmed = input.trim();
    let body = trimmed
        .strip_prefix("matrix[")
        .and_then(|s| s.strip_suffix(']'))
        .ok_or_else(|| err(line, 1, "expected `matrix[[...],[...]]`"))?;
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    let mut depth = 0usize;
    let mut current = String::new();
    for c in body.chars() {
        match c {
            '[' => {
                depth += 1;
                if depth == 1 {
                    current.clear();
                    continue;
                }
            }
            ']' => {
                if depth == 0 {
                    return Err(err(line, 1, "unbalanced brackets in matrix"));
                }
                depth -= 1;
                if depth == 0 {
                    let entries = current
                        .split(',')
                        .map(|t| Scalar::parse(t.trim()).map_err(|e| err(line, 1, e.to_string())))
                        .collect::<Result<Vec<_>, _>>()?;
                    rows.push(entries);
                    continue;
                }
            }
            _ => {}
        }
        if depth >= 1 {
            current.push(c);
        }
    }
    if depth != 0 {
        return Err(err(line, 1, "unbalanced brackets in matrix"));
    }
    if rows.is_empty() {
        return Err(err(line, 1, "empty matrix"));
    }
    let cols = rows[0].len();
    if rows.iter().any(|r| r.len() != cols) {
        return Err(err(line, 1, "ragged matrix rows"));
    }
    Ok(Matrix::from_rows(rows))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_with_module() {
        let text = "\
# one-dimensional twist
algebra an
module V dim 1
action H = matrix[[1/2*r2]]
action E = matrix[[0]]
";
        let spec = parse(text).unwrap();
        assert_eq!(spec.algebra.dim(), 2);
        let v = spec.module.unwrap();
        assert_eq!(v.dim, 1);
        assert_eq!(v.actions[0][(0, 0)], Scalar::inv_sqrt2());
    }

    #[test]
    fn custom_algebra_with_subalgebra() {
        let text = "\
algebra g generators F H E
bracket H E = 1/2*r2 * E
bracket H F = -1/2*r2 * F
bracket E F = 1/2*r2 * H
subalgebra H E
";
        let spec = parse(text).unwrap();
        assert_eq!(spec.algebra.dim(), 3);
        assert_eq!(spec.subalgebra, Some(vec![1, 2]));
    }

    #[test]
    fn errors_carry_position() {
        let e = parse("algebra an\nbogus line\n").unwrap_err();
        assert_eq!(e.line, 2);
        let e2 = parse(
            "algebra an\nmodule V dim 1\naction H = matrix[[1],[2]]\naction E = matrix[[0]]\n",
        )
        .unwrap_err();
        assert_eq!(e2.line, 3);
        // Bracket-incompatible module.
        let e3 =
            parse("algebra an\nmodule V dim 1\naction H = matrix[[0]]\naction E = matrix[[1]]\n")
                .unwrap_err();
        assert!(e3.message.contains("compat"));
    }
}
