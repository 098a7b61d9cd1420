//! Parsers for the plain-text factorization format.
//!
//! ```text
//! page g=0 h=3
//! round 1..1
//! conj s2^-1 round 1..2
//! ```
//!
//! Genus-one words add a `handle <holes> <left> <right|outer>` line and use
//! `named <name> class <c_0> ... <c_k> [rot <r>]` lines.

use crate::mcg::{Curve, Factorization, Genus1Factorization, HandlePage, NamedCurve, Page};
use crate::palf::PalfWord;
use crate::Error;

fn perr(line: &str) -> Error {
    Error::Parse(format!("cannot read {line:?}"))
}

fn parse_letter(tok: &str) -> Option<i32> {
    let body = tok.strip_prefix('s')?;
    match body.strip_suffix("^-1") {
        Some(k) => k.parse::<i32>().ok().filter(|&k| k > 0).map(|k| -k),
        None => body.parse::<i32>().ok().filter(|&k| k > 0),
    }
}

/// Reads `round i..j` or `conj <s-word> round i..j`.
pub fn parse_curve(line: &str) -> Result<Curve, Error> {
    let toks: Vec<&str> = line.split_whitespace().collect();
    let (conj, rest) = match toks.first() {
        Some(&"conj") => {
            let r = toks.iter().position(|&t| t == "round").ok_or_else(|| perr(line))?;
            let conj: Option<Vec<i32>> = toks[1..r].iter().map(|t| parse_letter(t)).collect();
            (conj.ok_or_else(|| perr(line))?, &toks[r..])
        }
        _ => (Vec::new(), &toks[..]),
    };
    if rest.len() != 2 || rest[0] != "round" {
        return Err(perr(line));
    }
    let (lo, hi) = rest[1].split_once("..").ok_or_else(|| perr(line))?;
    let lo: usize = lo.parse().map_err(|_| perr(line))?;
    let hi: usize = hi.parse().map_err(|_| perr(line))?;
    if lo == 0 || lo > hi {
        return Err(perr(line));
    }
    Ok(Curve::conjugated(conj, lo, hi))
}

fn parse_page(line: &str) -> Result<Page, Error> {
    let toks: Vec<&str> = line.split_whitespace().collect();
    if toks.len() != 3 || toks[0] != "page" {
        return Err(perr(line));
    }
    let g: u8 = toks[1].strip_prefix("g=").and_then(|x| x.parse().ok()).ok_or_else(|| perr(line))?;
    let h: usize = toks[2].strip_prefix("h=").and_then(|x| x.parse().ok()).ok_or_else(|| perr(line))?;
    if g > 1 {
        return Err(Error::Unsupported(format!("pages of genus {g}")));
    }
    Ok(Page { genus: g, holes: h })
}

fn parse_handle(line: &str) -> Result<HandlePage, Error> {
    let toks: Vec<&str> = line.split_whitespace().collect();
    if toks.len() != 4 || toks[0] != "handle" {
        return Err(perr(line));
    }
    let holes: usize = toks[1].parse().map_err(|_| perr(line))?;
    let left: usize = toks[2].parse().map_err(|_| perr(line))?;
    let right = match toks[3] {
        "outer" => None,
        r => Some(r.parse().map_err(|_| perr(line))?),
    };
    HandlePage::new(holes, left, right)
}

fn parse_named(line: &str, rank: usize) -> Result<NamedCurve, Error> {
    let toks: Vec<&str> = line.split_whitespace().collect();
    if toks.len() < 3 || toks[0] != "named" || toks[2] != "class" {
        return Err(perr(line));
    }
    let mut class = Vec::new();
    let mut i = 3;
    while i < toks.len() && toks[i] != "rot" {
        class.push(toks[i].parse::<i64>().map_err(|_| perr(line))?);
        i += 1;
    }
    if class.len() != rank {
        return Err(Error::Parse(format!("class of {} has {} entries, expected {rank}", toks[1], class.len())));
    }
    let rotation = match toks.get(i) {
        Some(_) => {
            let r = toks.get(i + 1).and_then(|x| x.parse().ok()).ok_or_else(|| perr(line))?;
            if i + 2 != toks.len() {
                return Err(perr(line));
            }
            Some(r)
        }
        None => None,
    };
    Ok(NamedCurve {
        name: toks[1].to_string(),
        class,
        rotation,
        planar: None,
    })
}

fn content_lines(text: &str) -> impl Iterator<Item = &str> {
    text.lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty())
}

/// Reads a factorization block of either genus.
pub fn parse_word(text: &str) -> Result<PalfWord, Error> {
    let mut lines = content_lines(text);
    let page = parse_page(lines.next().ok_or_else(|| Error::Parse("empty factorization".into()))?)?;
    if page.genus == 0 {
        let mut word = Vec::new();
        for l in lines {
            let c = parse_curve(l)?;
            if c.max_hole() > page.holes {
                return Err(Error::Parse(format!("{l:?} leaves the page")));
            }
            word.push(c);
        }
        return Ok(PalfWord::Planar(Factorization::new(page, word)));
    }
    let hp = parse_handle(lines.next().ok_or_else(|| Error::Parse("missing handle line".into()))?)?;
    if hp.page() != page {
        return Err(Error::Parse("handle line does not match the page".into()));
    }
    let word = lines.map(|l| parse_named(l, hp.rank())).collect::<Result<_, _>>()?;
    Ok(PalfWord::Genus1(Genus1Factorization { page: hp, word }))
}

pub fn parse_factorization(text: &str) -> Result<Factorization, Error> {
    match parse_word(text)? {
        PalfWord::Planar(f) => Ok(f),
        PalfWord::Genus1(_) => Err(Error::Unsupported("expected a planar page".into())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_planar() {
        let f = Factorization::new(
            Page::planar(3),
            vec![Curve::round(2, 3), Curve::conjugated(vec![-2, 1], 1, 2), Curve::hole(1)],
        );
        assert_eq!(parse_factorization(&f.to_string()).unwrap(), f);
    }

    #[test]
    fn round_trip_genus_one() {
        let hp = HandlePage::new(3, 2, Some(3)).unwrap();
        let w = Genus1Factorization {
            page: hp,
            word: vec![NamedCurve {
                name: "x".into(),
                class: vec![1, 0, 0, 0],
                rotation: Some(1),
                planar: None,
            }],
        };
        assert_eq!(parse_word(&w.to_string()).unwrap(), PalfWord::Genus1(w));
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_curve("round 3..1").is_err());
        assert!(parse_curve("conj t2 round 1..2").is_err());
        assert!(parse_word("page g=2 h=1").is_err());
        assert!(parse_word("page g=0 h=2\nround 1..3").is_err());
    }
}
