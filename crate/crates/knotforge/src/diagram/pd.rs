//! PD text format: one `X[a,b,c,d] sign` per line, `O` per free loop,
//! `#` starts a comment.

use std::fmt;
use std::str::FromStr;

use super::{Crossing, Diagram, DiagramError};

impl Diagram {
    pub fn to_pd(&self) -> String {
        self.to_string()
    }

    pub fn from_pd(text: &str) -> Result<Diagram, DiagramError> {
        text.parse()
    }
}

impl fmt::Display for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for x in self.crossings() {
            let a = x.arcs;
            let s = if x.sign > 0 { "+1" } else { "-1" };
            writeln!(f, "X[{},{},{},{}] {}", a[0], a[1], a[2], a[3], s)?;
        }
        for _ in 0..self.loops() {
            writeln!(f, "O")?;
        }
        Ok(())
    }
}

fn parse_line(line: &str, no: usize) -> Result<Option<Crossing>, DiagramError> {
    let err = |msg: &str| DiagramError::Parse {
        line: no,
        msg: msg.to_string(),
    };
    let body = line
        .strip_prefix('X')
        .ok_or_else(|| err("expected `X[` or `O`"))?
        .trim_start();
    let body = body.strip_prefix('[').ok_or_else(|| err("expected `[`"))?;
    let close = body.find(']').ok_or_else(|| err("missing `]`"))?;
    let nums: Vec<&str> = body[..close].split(',').map(str::trim).collect();
    if nums.len() != 4 {
        return Err(err("a crossing needs four arcs"));
    }
    let mut arcs = [0u32; 4];
    for (slot, n) in arcs.iter_mut().zip(&nums) {
        *slot = n
            .parse()
            .map_err(|_| err(&format!("bad arc label `{n}`")))?;
    }
    let sign = match body[close + 1..].trim() {
        "+1" | "+" | "1" => 1,
        "-1" | "-" => -1,
        "" => return Err(err("missing crossing sign")),
        other => return Err(err(&format!("bad sign `{other}`"))),
    };
    Ok(Some(Crossing { arcs, sign }))
}

impl FromStr for Diagram {
    type Err = DiagramError;

    fn from_str(text: &str) -> Result<Diagram, DiagramError> {
        let mut crossings = Vec::new();
        let mut loops = 0;
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            if line == "O" {
                loops += 1;
                continue;
            }
            if let Some(x) = parse_line(line, i + 1)? {
                crossings.push(x);
            }
        }
        if crossings.is_empty() && loops == 0 {
            loops = 1;
        }
        Diagram::new(crossings, loops)
    }
}
