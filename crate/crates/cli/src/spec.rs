//! Text forms accepted on the command line: distribution specs and grids.

use std::fmt;
use std::path::Path;

use extropy_core::Distribution;

/// A command-line input that could not be turned into a value.
#[derive(Debug, Clone, PartialEq)]
pub struct ParseError(pub String);

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

fn err<T>(msg: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError(msg.into()))
}

fn number(token: &str, spec: &str) -> Result<f64, ParseError> {
    token
        .trim()
        .parse::<f64>()
        .or_else(|_| err(format!("`{token}` in `{spec}` is not a number")))
}

fn numbers<const K: usize>(args: &str, spec: &str) -> Result<[f64; K], ParseError> {
    let parts: Vec<&str> = args.split(',').collect();
    if parts.len() != K {
        return err(format!("`{spec}` needs {K} comma-separated parameter(s), got `{args}`"));
    }
    let mut out = [0.0; K];
    for (slot, part) in out.iter_mut().zip(parts) {
        *slot = number(part, spec)?;
    }
    Ok(out)
}

/// Parses `exp:λ`, `unif:b`, `power:α`, `pareto:θ,x₀`, `weibull2:α,λ` or `table:<path>`.
pub fn parse_distribution(spec: &str) -> Result<Distribution, ParseError> {
    let Some((family, args)) = spec.split_once(':') else {
        return err(format!("`{spec}` is not of the form family:parameters"));
    };
    let built = match family {
        "exp" => {
            let [rate] = numbers(args, spec)?;
            Distribution::exponential(rate)
        }
        "unif" => {
            let [b] = numbers(args, spec)?;
            Distribution::uniform(b)
        }
        "power" => {
            let [alpha] = numbers(args, spec)?;
            Distribution::power(alpha)
        }
        "pareto" => {
            let [theta, scale] = numbers(args, spec)?;
            Distribution::pareto(theta, scale)
        }
        "weibull2" => {
            let [shape, rate] = numbers(args, spec)?;
            Distribution::weibull2(shape, rate)
        }
        "table" => return read_table(Path::new(args)),
        other => return err(format!("unknown family `{other}` in `{spec}`")),
    };
    built.or_else(|e| err(format!("`{spec}`: {e}")))
}

/// Reads a CSV with header `x,F`.
pub fn read_table(path: &Path) -> Result<Distribution, ParseError> {
    let shown = path.display();
    let mut reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_path(path)
        .or_else(|e| err(format!("cannot read table `{shown}`: {e}")))?;
    let headers = reader
        .headers()
        .or_else(|e| err(format!("table `{shown}`: {e}")))?
        .clone();
    if headers.len() != 2 || &headers[0] != "x" || &headers[1] != "F" {
        return err(format!("table `{shown}` must have the header `x,F`"));
    }
    let mut points = Vec::new();
    for (i, record) in reader.records().enumerate() {
        let record = record.or_else(|e| err(format!("table `{shown}`: {e}")))?;
        let row = i + 2;
        let field = |k: usize| {
            record[k]
                .parse::<f64>()
                .or_else(|_| err(format!("table `{shown}` line {row}: `{}` is not a number", &record[k])))
        };
        points.push((field(0)?, field(1)?));
    }
    Distribution::tabulated(&points).or_else(|e| err(format!("table `{shown}`: {e}")))
}

/// Either a single value or an inclusive grid `start:stop:count`.
#[derive(Debug, Clone, PartialEq)]
pub enum TSpec {
    Point(f64),
    Grid { start: f64, stop: f64, count: usize },
}

pub fn parse_t(text: &str) -> Result<TSpec, ParseError> {
    let parts: Vec<&str> = text.split(':').collect();
    match parts.as_slice() {
        [v] => Ok(TSpec::Point(number(v, text)?)),
        [a, b, c] => Ok(TSpec::Grid {
            start: number(a, text)?,
            stop: number(b, text)?,
            count: c
                .trim()
                .parse()
                .or_else(|_| err(format!("`{c}` in `{text}` is not a point count")))?,
        }),
        _ => err(format!("`{text}` is neither a number nor start:stop:count")),
    }
}

/// Either a single sample size or an inclusive range `start:stop`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum NSpec {
    Point(usize),
    Range(usize, usize),
}

pub fn parse_n(text: &str) -> Result<NSpec, ParseError> {
    let int = |s: &str| {
        s.trim()
            .parse::<usize>()
            .or_else(|_| err(format!("`{s}` in `{text}` is not a sample size")))
    };
    match text.split_once(':') {
        None => Ok(NSpec::Point(int(text)?)),
        Some((a, b)) => Ok(NSpec::Range(int(a)?, int(b)?)),
    }
}
