//! Certified monodromy substitutions. A certificate holds two words on one
//! page and the evidence that their products agree; it is re-checked from
//! scratch by [`SubstitutionCertificate::verify`] and never trusted from a
//! file.

use std::fmt;

use crate::chains::{self, ClassT};
use crate::mcg::genus1::ScriptReplay;
use crate::mcg::{mc_equal, Factorization};
use crate::palf::{ball_tuple, bo_palf, gm_chain_word, PalfWord};
use crate::Error;

/// A linear configuration whose boundary is `L(p^2, pq - 1)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BlowdownConfig {
    pub p: i64,
    pub q: i64,
    pub chain: Vec<i64>,
}

impl fmt::Display for BlowdownConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {}", self.p, self.q, chains::format_chain(&self.chain))
    }
}

/// `(p, q)` with `[chain] = p^2/(pq - 1)`, 0 < q < p coprime.
pub fn recognize_config(chain: &[i64]) -> Option<BlowdownConfig> {
    if chain.is_empty() || chain.iter().any(|&c| c < 2) {
        return None;
    }
    let (n, d) = chains::hj_eval(chain).ok()?.as_pair()?;
    let p = (n as f64).sqrt().round() as i64;
    let p = (p - 1..=p + 1).find(|&x| x > 0 && x * x == n)?;
    if (d + 1) % p != 0 {
        return None;
    }
    let q = (d + 1) / p;
    (0 < q && q < p && num_integer::gcd(p, q) == 1).then(|| BlowdownConfig {
        p,
        q,
        chain: chain.to_vec(),
    })
}

/// Number of twists removed when the Milnor fibre of a class-T chain
/// replaces its plumbing: `len - d + 1`, which is the chain length when
/// `d = 1`. `None` for rational double points and chains not of class T.
pub fn expected_drop(chain: &[i64]) -> Option<usize> {
    match chains::is_class_t(chain) {
        ClassT::Wahl { d, .. } => Some(chain.len() + 1 - d as usize),
        _ => None,
    }
}

/// Why the two sides agree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Evidence {
    /// Both products computed by the planar engine on `holes` holes.
    Engine { holes: usize, equal: bool },
    /// Genus one: products of transvections on the handle page agree. A
    /// relation transported from a planar model carries that model; a
    /// rewrite carries its replayed script.
    Homology {
        products_equal: bool,
        model: Option<Box<SubstitutionCertificate>>,
        script: Option<ScriptReplay>,
    },
}

impl Evidence {
    fn holds(&self) -> bool {
        match self {
            Evidence::Engine { equal, .. } => *equal,
            Evidence::Homology {
                products_equal,
                model,
                script,
            } => {
                *products_equal
                    && model.as_ref().is_none_or(|m| m.verify().is_ok())
                    && script.as_ref().is_none_or(ScriptReplay::all_ok)
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubstitutionCertificate {
    pub name: String,
    pub lhs: PalfWord,
    pub rhs: PalfWord,
    /// Class-T chain whose plumbing the left side realizes.
    pub chain: Option<Vec<i64>>,
    pub blowdown: Option<BlowdownConfig>,
    pub evidence: Evidence,
}

fn compute_evidence(lhs: &PalfWord, rhs: &PalfWord) -> Result<Evidence, Error> {
    match (lhs, rhs) {
        (PalfWord::Planar(a), PalfWord::Planar(b)) => {
            if a.page != b.page {
                return Err(Error::Certificate("sides live on different pages".into()));
            }
            Ok(Evidence::Engine {
                holes: a.page.holes,
                equal: mc_equal(&a.word, &b.word, a.page.holes),
            })
        }
        (PalfWord::Genus1(a), PalfWord::Genus1(b)) => {
            if a.page != b.page {
                return Err(Error::Certificate("sides live on different pages".into()));
            }
            Ok(Evidence::Homology {
                products_equal: a.product_matrix() == b.product_matrix(),
                model: None,
                script: None,
            })
        }
        _ => Err(Error::Certificate("sides have different genus".into())),
    }
}

impl SubstitutionCertificate {
    /// Builds a certificate and records the evidence, whatever it says.
    pub fn check(name: &str, lhs: PalfWord, rhs: PalfWord, chain: Option<Vec<i64>>) -> Result<Self, Error> {
        let evidence = compute_evidence(&lhs, &rhs)?;
        let blowdown = chain.as_deref().and_then(recognize_config);
        Ok(SubstitutionCertificate {
            name: name.to_string(),
            lhs,
            rhs,
            chain,
            blowdown,
            evidence,
        })
    }

    /// Builds a planar certificate and rejects it unless it verifies.
    pub fn certify(name: &str, lhs: Factorization, rhs: Factorization, chain: Option<Vec<i64>>) -> Result<Self, Error> {
        let c = Self::check(name, PalfWord::Planar(lhs), PalfWord::Planar(rhs), chain)?;
        c.verify()?;
        Ok(c)
    }

    /// Change of Euler characteristic of the total space.
    pub fn delta_chi(&self) -> i64 {
        self.rhs.len() as i64 - self.lhs.len() as i64
    }

    /// Recomputes the evidence and checks the length bookkeeping.
    pub fn verify(&self) -> Result<(), Error> {
        let fresh = compute_evidence(&self.lhs, &self.rhs)?;
        let fresh = match (&self.evidence, fresh) {
            (
                Evidence::Homology { model, script, .. },
                Evidence::Homology { products_equal, .. },
            ) => Evidence::Homology {
                products_equal,
                model: model.clone(),
                script: script.clone(),
            },
            (_, f) => f,
        };
        if !fresh.holds() {
            return Err(Error::Certificate(format!("{}: products differ", self.name)));
        }
        if let Some(chain) = &self.chain {
            let drop = expected_drop(chain)
                .ok_or_else(|| Error::Certificate(format!("{}: chain is not of class T", self.name)))?;
            if self.lhs.len() < self.rhs.len() || self.lhs.len() - self.rhs.len() != drop {
                return Err(Error::Certificate(format!(
                    "{}: length drop {} but the chain needs {drop}",
                    self.name,
                    self.lhs.len() as i64 - self.rhs.len() as i64
                )));
            }
        }
        if let Some(b) = &self.blowdown {
            if recognize_config(&b.chain).as_ref() != Some(b) {
                return Err(Error::Certificate(format!("{}: bad blowdown data", self.name)));
            }
        }
        Ok(())
    }

    pub fn is_valid(&self) -> bool {
        self.verify().is_ok()
    }

    /// Certificate file text.
    pub fn to_text(&self) -> String {
        let mut s = format!("certificate {}\n", self.name);
        if let Some(c) = &self.chain {
            s.push_str(&format!("chain {}\n", chains::format_chain(c)));
        }
        match &self.blowdown {
            Some(b) => s.push_str(&format!("blowdown {b}\n")),
            None => s.push_str("blowdown none\n"),
        }
        s.push_str("lhs\n");
        s.push_str(&self.lhs.to_string());
        s.push_str("rhs\n");
        s.push_str(&self.rhs.to_string());
        s.push_str(&self.transcript());
        s.push_str("end\n");
        s
    }

    /// Evidence lines of the certificate file.
    pub fn transcript(&self) -> String {
        let mut s = String::new();
        match &self.evidence {
            Evidence::Engine { holes, equal } => {
                s.push_str(&format!("evidence engine holes {holes} equal {equal}\n"));
            }
            Evidence::Homology {
                products_equal,
                model,
                script,
            } => {
                s.push_str(&format!("evidence homology equal {products_equal}\n"));
                if let Some(m) = model {
                    s.push_str(&format!("evidence model {} valid {}\n", m.name, m.is_valid()));
                }
                if let Some(r) = script {
                    s.push_str(&format!("evidence script start {}\n", r.start.join(" ")));
                    for st in &r.steps {
                        s.push_str(&format!(
                            "evidence script {} -> {} ok {}\n",
                            st.mv,
                            st.word.join(" "),
                            st.homology_ok
                        ));
                    }
                }
            }
        }
        s.push_str(&format!("delta-chi {}\n", self.delta_chi()));
        s
    }

    /// Reads a certificate file. The stored evidence is discarded and
    /// recomputed.
    pub fn parse(text: &str) -> Result<Self, Error> {
        let mut name = None;
        let mut chain = None;
        let mut lhs = String::new();
        let mut rhs = String::new();
        let mut section = 0;
        for raw in text.lines() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let head = line.split_whitespace().next().unwrap_or("");
            match head {
                "certificate" if section == 0 => name = Some(line["certificate".len()..].trim().to_string()),
                "chain" if section == 0 => chain = Some(chains::parse_chain(line["chain".len()..].trim())?),
                "blowdown" if section == 0 => {}
                "lhs" => section = 1,
                "rhs" => section = 2,
                "evidence" | "delta-chi" | "end" => section = 3,
                _ => match section {
                    1 => {
                        lhs.push_str(line);
                        lhs.push('\n');
                    }
                    2 => {
                        rhs.push_str(line);
                        rhs.push('\n');
                    }
                    3 => {}
                    _ => return Err(Error::Parse(format!("unexpected line {line:?}"))),
                },
            }
        }
        let name = name.ok_or_else(|| Error::Parse("missing certificate line".into()))?;
        let lhs = crate::text::parse_word(&lhs)?;
        let rhs = crate::text::parse_word(&rhs)?;
        Self::check(&name, lhs, rhs, chain)
    }
}

impl fmt::Display for SubstitutionCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text())
    }
}

/// Relation replacing the plumbing of a class-T chain by the
/// Milnor fibre of its smoothing. The left side is the Gay–Mark word of the
/// chain rooted at its last entry, the right side the cyclic-filling word of
/// the matching Lisca tuple.
pub fn rbd_relation(chain: &[i64]) -> Result<SubstitutionCertificate, Error> {
    let (d, n_t) = match chains::is_class_t(chain) {
        ClassT::Wahl { d, n, .. } => (d, n),
        ClassT::RationalDoublePoint => {
            return Err(Error::Unsupported(format!(
                "{} is a rational double point",
                chains::format_chain(chain)
            )))
        }
        ClassT::No => {
            return Err(Error::Domain(format!("{} is not of class T", chains::format_chain(chain))))
        }
    };
    let (nn, qq) = chains::hj_eval(chain)?
        .as_pair()
        .ok_or_else(|| Error::Domain("chain does not evaluate".into()))?;
    let lhs = gm_chain_word(chain)?.factorization();
    let (tuple, trace) = ball_tuple(nn, qq, d, n_t)?;
    let rhs = match bo_palf(nn, qq, &tuple, &trace)?.word {
        PalfWord::Planar(f) => f,
        PalfWord::Genus1(_) => unreachable!("cyclic words are planar"),
    };
    if rhs.page != lhs.page {
        return Err(Error::Certificate("ball word lives on a different page".into()));
    }
    let name = format!("rbd {}", chains::format_chain(chain));
    SubstitutionCertificate::certify(&name, lhs, rhs, Some(chain.to_vec()))
}

pub fn lantern() -> Result<SubstitutionCertificate, Error> {
    let mut c = rbd_relation(&[4])?;
    c.name = "lantern".into();
    Ok(c)
}

/// Chain of the configuration `C_p`: `p + 2` followed by `p - 2` twos.
pub fn daisy_chain(p: i64) -> Vec<i64> {
    let mut c = vec![p + 2];
    c.extend(std::iter::repeat_n(2, (p - 2).max(0) as usize));
    c
}

/// Daisy relation: `p - 1` outer twists and `p + 1` hole twists on a disk with
/// `p + 1` holes equal a word of `p + 1` twists.
pub fn daisy(p: i64) -> Result<SubstitutionCertificate, Error> {
    if p < 2 {
        return Err(Error::Domain(format!("daisy needs p >= 2, got {p}")));
    }
    let mut c = rbd_relation(&daisy_chain(p))?;
    c.name = format!("daisy {p}");
    Ok(c)
}

/// The shipped planar relations, each verified on construction.
pub fn list() -> Result<Vec<SubstitutionCertificate>, Error> {
    let mut out = vec![lantern()?];
    for p in 3..=6 {
        out.push(daisy(p)?);
    }
    for chain in [vec![2, 5, 3], vec![5, 2], vec![2, 2, 6], vec![3, 5, 2], vec![6, 2, 2]] {
        out.push(rbd_relation(&chain)?);
    }
    Ok(out)
}
