//! File formats: automorphism and certificate records (JSON), diagram
//! records (JSON), basepoint and trace and fatgraph files (text). All
//! writers are deterministic so reruns produce byte-identical artifacts.

use std::collections::BTreeMap;
use std::sync::Arc;

use anyhow::{anyhow, bail, Context, Result};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use chordslide::diagram::{MarkedDiagram, Shape};
use chordslide::factor::{Automorphism, Certificate};
use chordslide::fatgraph::BorderedFatgraph;
use chordslide::freegroup::{Basepoint, Energy, Letter, Word};
use chordslide::reduction::{ReductionTrace, Strategy};
use chordslide::slides::{Direction, Slide, SlideRecord};

use num_bigint::BigUint;

pub fn parse_energy(s: &str) -> Result<Energy> {
    let v = BigUint::parse_bytes(s.as_bytes(), 10)
        .ok_or_else(|| anyhow!("bad energy value `{s}`"))?;
    Ok(Energy::from(v))
}

fn generator_token(index: usize, genus: usize) -> String {
    Letter::new(index, false).token(genus)
}

// ---------------------------------------------------------------- basepoint

/// Basepoint file: the genus on the first line, the letter sequence as one
/// word-line on the second. Blank lines and `#` comments are ignored.
pub fn parse_basepoint_file(text: &str) -> Result<Basepoint> {
    let mut lines = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'));
    let genus: usize = lines
        .next()
        .context("basepoint file is empty")?
        .parse()
        .context("first basepoint line must be the genus")?;
    let sigma_line = lines.next().context("missing letter sequence line")?;
    let mut letters = Vec::new();
    for tok in sigma_line.split_whitespace() {
        letters.push(Letter::parse(tok, genus)?);
    }
    Ok(Basepoint::from_sigma(genus, letters)?)
}

pub fn write_basepoint_file(base: &Basepoint) -> String {
    let mut out = String::new();
    out.push_str(&base.genus().to_string());
    out.push('\n');
    out.push_str(&base.boundary().to_token_string(base.genus()));
    out.push('\n');
    out
}

// -------------------------------------------------------------- automorphism

#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct AutomorphismDoc {
    pub genus: usize,
    /// generator token -> image word
    pub images: BTreeMap<String, String>,
}

pub fn automorphism_to_doc(phi: &Automorphism) -> AutomorphismDoc {
    let genus = phi.base().genus();
    let images = (1..=2 * genus)
        .map(|i| (generator_token(i, genus), phi.image(i).to_token_string(genus)))
        .collect();
    AutomorphismDoc { genus, images }
}

pub fn doc_to_automorphism(doc: &AutomorphismDoc, base: Arc<Basepoint>) -> Result<Automorphism> {
    if doc.genus != base.genus() {
        bail!("file genus {} does not match basepoint genus {}", doc.genus, base.genus());
    }
    let genus = base.genus();
    let mut images: Vec<Option<Word>> = vec![None; 2 * genus];
    for (key, value) in &doc.images {
        let letter = Letter::parse(key, genus)?;
        if letter.is_inverse() {
            bail!("image key `{key}` must be a positive generator");
        }
        let slot = &mut images[letter.index() - 1];
        if slot.is_some() {
            bail!("duplicate image for generator `{key}`");
        }
        *slot = Some(Word::parse(value, genus)?);
    }
    let images: Vec<Word> = images
        .into_iter()
        .enumerate()
        .map(|(i, w)| w.ok_or_else(|| anyhow!("missing image for `{}`", generator_token(i + 1, genus))))
        .collect::<Result<_>>()?;
    Ok(Automorphism::new(base, images)?)
}

pub fn automorphism_to_json(phi: &Automorphism) -> String {
    let mut s = serde_json::to_string_pretty(&automorphism_to_doc(phi)).unwrap();
    s.push('\n');
    s
}

pub fn automorphism_from_json(text: &str, base: Option<Arc<Basepoint>>) -> Result<Automorphism> {
    let doc: AutomorphismDoc = serde_json::from_str(text).context("bad automorphism file")?;
    let base = match base {
        Some(b) => b,
        None => Arc::new(Basepoint::standard(doc.genus.max(1))),
    };
    doc_to_automorphism(&doc, base)
}

// -------------------------------------------------------------- certificate

#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct SlideDoc {
    pub pos: usize,
    pub dir: String,
    pub landing: usize,
    pub energy: String,
}

#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct CertificatePayload {
    pub genus: usize,
    /// the basepoint letter sequence as a word string
    pub basepoint: String,
    pub images: BTreeMap<String, String>,
    pub strategy: String,
    pub initial_energy: String,
    pub final_energy: String,
    pub slides: Vec<SlideDoc>,
}

#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct CertificateDoc {
    #[serde(flatten)]
    pub payload: CertificatePayload,
    pub digest: String,
}

fn payload_digest(payload: &CertificatePayload) -> String {
    let canonical = serde_json::to_string(payload).unwrap();
    let mut hasher = Sha256::new();
    hasher.update(canonical.as_bytes());
    format!("sha256:{}", hex::encode(hasher.finalize()))
}

pub fn certificate_to_json(cert: &Certificate) -> String {
    let phi = &cert.automorphism;
    let genus = phi.base().genus();
    let trace = &cert.trace;
    let payload = CertificatePayload {
        genus,
        basepoint: phi.base().boundary().to_token_string(genus),
        images: automorphism_to_doc(phi).images,
        strategy: trace.strategy.as_str().to_string(),
        initial_energy: trace.initial_energy().to_string(),
        final_energy: trace.final_energy().to_string(),
        slides: trace
            .slides
            .iter()
            .map(|r| SlideDoc {
                pos: r.slide.pos,
                dir: r.slide.dir.as_str().to_string(),
                landing: r.landing_pos,
                energy: r.energy_after.to_string(),
            })
            .collect(),
    };
    let digest = payload_digest(&payload);
    let mut s = serde_json::to_string_pretty(&CertificateDoc { payload, digest }).unwrap();
    s.push('\n');
    s
}

pub struct LoadedCertificate {
    pub certificate: Certificate,
    pub digest_ok: bool,
}

pub fn certificate_from_json(text: &str) -> Result<LoadedCertificate> {
    let doc: CertificateDoc = serde_json::from_str(text).context("bad certificate file")?;
    let payload = &doc.payload;
    let digest_ok = payload_digest(payload) == doc.digest;
    let genus = payload.genus;
    if genus == 0 {
        bail!("genus must be positive");
    }
    let mut letters = Vec::new();
    for tok in payload.basepoint.split_whitespace() {
        letters.push(Letter::parse(tok, genus)?);
    }
    let base = Arc::new(Basepoint::from_sigma(genus, letters)?);
    let phi = doc_to_automorphism(
        &AutomorphismDoc { genus, images: payload.images.clone() },
        base,
    )?;
    let strategy = Strategy::parse(&payload.strategy)
        .ok_or_else(|| anyhow!("unknown strategy `{}`", payload.strategy))?;
    let initial = parse_energy(&payload.initial_energy)?;
    let mut energies = vec![initial];
    let mut slides = Vec::new();
    for s in &payload.slides {
        let dir = Direction::parse(&s.dir).ok_or_else(|| anyhow!("bad direction `{}`", s.dir))?;
        let energy_after = parse_energy(&s.energy)?;
        energies.push(energy_after.clone());
        slides.push(SlideRecord {
            slide: Slide::new(s.pos, dir),
            landing_pos: s.landing,
            energy_after,
        });
    }
    let final_energy = parse_energy(&payload.final_energy)?;
    if energies.last() != Some(&final_energy) {
        bail!("final energy does not match the last slide energy");
    }
    let trace = ReductionTrace { strategy, energies, slides };
    Ok(LoadedCertificate { certificate: Certificate { automorphism: phi, trace }, digest_ok })
}

// ------------------------------------------------------------------ diagram

#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct DiagramDoc {
    pub genus: usize,
    /// 1-indexed position pairs
    pub pairs: Vec<(usize, usize)>,
    pub labels: Vec<String>,
}

pub fn diagram_to_doc(d: &MarkedDiagram) -> DiagramDoc {
    let genus = d.base().genus();
    DiagramDoc {
        genus,
        pairs: d.shape().chords().into_iter().map(|(l, r)| (l + 1, r + 1)).collect(),
        labels: d.labels().iter().map(|w| w.to_token_string(genus)).collect(),
    }
}

pub fn doc_to_diagram(doc: &DiagramDoc, base: Arc<Basepoint>) -> Result<MarkedDiagram> {
    if doc.genus != base.genus() {
        bail!("file genus {} does not match basepoint genus {}", doc.genus, base.genus());
    }
    let n = 4 * doc.genus;
    let mut pairing = vec![usize::MAX; n];
    for &(l, r) in &doc.pairs {
        if l < 1 || r < 1 || l > n || r > n {
            bail!("pair ({l}, {r}) out of range");
        }
        if pairing[l - 1] != usize::MAX || pairing[r - 1] != usize::MAX {
            bail!("position paired twice");
        }
        pairing[l - 1] = r - 1;
        pairing[r - 1] = l - 1;
    }
    if pairing.iter().any(|&p| p == usize::MAX) {
        bail!("pairing does not cover all positions");
    }
    let shape = Shape::new(pairing)?;
    let mut labels = Vec::with_capacity(n);
    for text in &doc.labels {
        labels.push(Word::parse(text, doc.genus)?);
    }
    Ok(MarkedDiagram::from_parts(base, shape, labels)?)
}

pub fn diagram_to_json(d: &MarkedDiagram) -> String {
    let mut s = serde_json::to_string_pretty(&diagram_to_doc(d)).unwrap();
    s.push('\n');
    s
}

// -------------------------------------------------------------- trace text

/// Trace text: a header with genus, strategy and the energy endpoints, then
/// one `pos dir energy` line per slide.
pub fn trace_to_text(genus: usize, trace: &ReductionTrace) -> String {
    let mut out = String::new();
    out.push_str(&format!("genus {genus}\n"));
    out.push_str(&format!("strategy {}\n", trace.strategy));
    out.push_str(&format!("initial_energy {}\n", trace.initial_energy()));
    out.push_str(&format!("final_energy {}\n", trace.final_energy()));
    out.push_str(&format!("slides {}\n", trace.len()));
    for r in &trace.slides {
        out.push_str(&format!("{} {} {}\n", r.slide.pos, r.slide.dir, r.energy_after));
    }
    out
}

/// Bare slide sequence: one `pos dir` line per slide, pre-slide numbering.
pub fn slides_to_text(slides: &[SlideRecord]) -> String {
    let mut out = String::new();
    for r in slides {
        out.push_str(&format!("{} {}\n", r.slide.pos, r.slide.dir));
    }
    out
}

pub fn parse_slides_text(text: &str) -> Result<Vec<Slide>> {
    let mut out = Vec::new();
    for line in text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')) {
        let mut parts = line.split_whitespace();
        let pos: usize = parts
            .next()
            .context("missing position")?
            .parse()
            .context("bad slide position")?;
        let dir = parts
            .next()
            .and_then(Direction::parse)
            .ok_or_else(|| anyhow!("bad slide direction in `{line}`"))?;
        out.push(Slide::new(pos, dir));
    }
    Ok(out)
}

// ------------------------------------------------------------ fatgraph text

/// Fatgraph file: `vertex` lines list half-edges in cyclic order, `edge`
/// lines pair half-edges, `tail` names the half-edge at the univalent
/// vertex.
pub fn fatgraph_to_text(g: &BorderedFatgraph) -> String {
    let mut out = String::new();
    for v in g.vertices() {
        out.push_str("vertex");
        for h in v {
            out.push_str(&format!(" {h}"));
        }
        out.push('\n');
    }
    for (a, b) in g.edges() {
        out.push_str(&format!("edge {a} {b}\n"));
    }
    out.push_str(&format!("tail {}\n", g.tail_half()));
    out
}

pub fn parse_fatgraph_text(text: &str) -> Result<BorderedFatgraph> {
    let mut vertices: Vec<Vec<usize>> = Vec::new();
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut tail: Option<usize> = None;
    for line in text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')) {
        let mut parts = line.split_whitespace();
        match parts.next() {
            Some("vertex") => {
                let halves: Vec<usize> =
                    parts.map(|t| t.parse().context("bad half-edge id")).collect::<Result<_>>()?;
                if halves.is_empty() {
                    bail!("vertex with no half-edges");
                }
                vertices.push(halves);
            }
            Some("edge") => {
                let a: usize = parts.next().context("edge needs two halves")?.parse()?;
                let b: usize = parts.next().context("edge needs two halves")?.parse()?;
                edges.push((a, b));
            }
            Some("tail") => {
                tail = Some(parts.next().context("tail needs a half-edge")?.parse()?);
            }
            _ => bail!("unknown fatgraph line `{line}`"),
        }
    }
    let n = 2 * edges.len();
    let mut sigma = vec![usize::MAX; n];
    let mut alpha = vec![usize::MAX; n];
    for v in &vertices {
        for k in 0..v.len() {
            let h = v[k];
            if h >= n || sigma[h] != usize::MAX {
                bail!("half-edge {h} out of range or used twice in vertices");
            }
            sigma[h] = v[(k + 1) % v.len()];
        }
    }
    for &(a, b) in &edges {
        if a >= n || b >= n || alpha[a] != usize::MAX || alpha[b] != usize::MAX || a == b {
            bail!("bad edge ({a}, {b})");
        }
        alpha[a] = b;
        alpha[b] = a;
    }
    if sigma.contains(&usize::MAX) || alpha.contains(&usize::MAX) {
        bail!("vertices and edges do not cover all half-edges");
    }
    let tail = tail.context("missing tail line")?;
    Ok(BorderedFatgraph::from_parts(sigma, alpha, tail)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use chordslide::factor::factor;
    use chordslide::fatgraph::from_pairing;

    fn twist() -> Automorphism {
        let base = Arc::new(Basepoint::standard(1));
        Automorphism::new(
            base,
            vec![Word::parse("a", 1).unwrap(), Word::parse("b a", 1).unwrap()],
        )
        .unwrap()
    }

    #[test]
    fn automorphism_roundtrip() {
        let phi = twist();
        let json = automorphism_to_json(&phi);
        let back = automorphism_from_json(&json, None).unwrap();
        assert_eq!(back, phi);
    }

    #[test]
    fn certificate_roundtrip_and_digest() {
        let cert = factor(&twist(), Strategy::Exhaustive, None).unwrap();
        let json = certificate_to_json(&cert);
        let loaded = certificate_from_json(&json).unwrap();
        assert!(loaded.digest_ok);
        assert_eq!(loaded.certificate, cert);

        let tampered = json.replace("\"dir\": \"R\"", "\"dir\": \"L\"");
        assert_ne!(tampered, json);
        let loaded = certificate_from_json(&tampered).unwrap();
        assert!(!loaded.digest_ok);
    }

    #[test]
    fn diagram_roundtrip_is_bit_exact() {
        let base = Arc::new(Basepoint::standard(2));
        let d = twist_diagram(base);
        let json = diagram_to_json(&d);
        let doc: DiagramDoc = serde_json::from_str(&json).unwrap();
        let back = doc_to_diagram(&doc, Arc::new(Basepoint::standard(2))).unwrap();
        assert_eq!(back, d);
        assert_eq!(diagram_to_json(&back), json);
    }

    fn twist_diagram(base: Arc<Basepoint>) -> MarkedDiagram {
        MarkedDiagram::basepoint_diagram(base)
    }

    #[test]
    fn basepoint_file_roundtrip() {
        for g in 1..=3 {
            let base = Basepoint::standard(g);
            let text = write_basepoint_file(&base);
            let back = parse_basepoint_file(&text).unwrap();
            assert_eq!(back, base);
        }
        assert!(parse_basepoint_file("1\nb a b A\n").is_err());
    }

    #[test]
    fn fatgraph_file_roundtrip() {
        let g = from_pairing(&[2, 3, 0, 1]).graph;
        let text = fatgraph_to_text(&g);
        let back = parse_fatgraph_text(&text).unwrap();
        assert_eq!(back, g);
    }

    #[test]
    fn slide_lines_roundtrip() {
        let cert = factor(&twist(), Strategy::Exhaustive, None).unwrap();
        let text = slides_to_text(&cert.trace.slides);
        assert_eq!(text, "2 R\n");
        let parsed = parse_slides_text(&text).unwrap();
        assert_eq!(parsed, vec![Slide::new(2, Direction::Right)]);
    }
}
