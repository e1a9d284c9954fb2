//! Parsers for command-line values: times, vertex lists, states, group
//! elements.

use qwalk_core::{io, Error, PureState, Result, WeightedGraph};

/// Evaluates `pi/2`, `pi/sqrt2`, `pi/(2*sqrt2)`, `π/4`, `1.25`, ...
pub fn parse_time(s: &str) -> Result<f64> {
    let mut expr = s.trim().replace('π', "pi");
    // `sqrtN` is shorthand for `sqrt(N)`
    while let Some(i) = expr.find("sqrt").filter(|&i| expr[i + 4..].starts_with(|c: char| c.is_ascii_digit())) {
        let digits = expr[i + 4..].chars().take_while(|c| c.is_ascii_digit() || *c == '.').count();
        let arg = expr[i + 4..i + 4 + digits].to_string();
        expr.replace_range(i..i + 4 + digits, &format!("sqrt({arg})"));
    }
    let t = meval::eval_str(&expr).map_err(|e| Error::BadParam(format!("bad time `{s}`: {e}")))?;
    if !t.is_finite() || t < 0.0 {
        return Err(Error::BadParam(format!("time must be finite and non-negative, got `{s}`")));
    }
    Ok(t)
}

/// `a,b` resolved against the graph's labels.
pub fn parse_two(g: &WeightedGraph, s: &str) -> Result<(usize, usize)> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    match parts.as_slice() {
        [a, b] => Ok((g.resolve(a)?, g.resolve(b)?)),
        _ => Err(Error::BadParam(format!("expected two vertices `a,b`, got `{s}`"))),
    }
}

pub fn parse_vertices(g: &WeightedGraph, s: &str) -> Result<Vec<usize>> {
    s.split(',').filter(|t| !t.trim().is_empty()).map(|t| g.resolve(t.trim())).collect()
}

/// One of the mutually exclusive state flags.
#[derive(Debug, Clone, Default)]
pub struct StateSpec {
    pub vertex: Option<String>,
    pub pair: Option<String>,
    pub plus: Option<String>,
    pub state: Option<String>,
}

impl StateSpec {
    pub fn is_empty(&self) -> bool {
        self.vertex.is_none() && self.pair.is_none() && self.plus.is_none() && self.state.is_none()
    }

    pub fn build(&self, g: &WeightedGraph, what: &str) -> Result<PureState> {
        let given = [&self.vertex, &self.pair, &self.plus, &self.state].iter().filter(|o| o.is_some()).count();
        if given != 1 {
            return Err(Error::BadParam(format!("give exactly one {what} state (vertex, pair, plus or state file)")));
        }
        if let Some(v) = &self.vertex {
            return Ok(PureState::vertex(g.resolve(v.trim())?));
        }
        if let Some(p) = &self.pair {
            let (a, b) = parse_two(g, p)?;
            return PureState::pair(a, b);
        }
        if let Some(p) = &self.plus {
            let (a, b) = parse_two(g, p)?;
            return PureState::plus(a, b);
        }
        let path = self.state.as_deref().unwrap_or_default();
        let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{path}: {e}")))?;
        io::state_from_json(&text, g)
    }
}

/// `"(1,0),(5,0)"` or `"1 0; 5 0"` into digit vectors.
pub fn parse_elements(s: &str) -> Result<Vec<Vec<usize>>> {
    let cleaned = s.replace(['(', '['], "").replace([')', ']'], ";");
    let mut out = Vec::new();
    for chunk in cleaned.split(';') {
        let chunk = chunk.trim().trim_matches(',').trim();
        if chunk.is_empty() {
            continue;
        }
        let digits = chunk
            .split([',', ' '])
            .filter(|t| !t.is_empty())
            .map(|t| t.parse::<usize>().map_err(|_| Error::BadParam(format!("bad group element `{chunk}`"))))
            .collect::<Result<Vec<_>>>()?;
        out.push(digits);
    }
    Ok(out)
}

pub fn parse_moduli(s: &str) -> Result<Vec<usize>> {
    s.split(',')
        .map(|t| t.trim().parse::<usize>().map_err(|_| Error::BadParam(format!("bad modulus `{t}`"))))
        .collect()
}
