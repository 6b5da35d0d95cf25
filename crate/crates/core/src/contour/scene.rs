//! Scene files: the line-oriented contour format, its JSON twin, and
//! portable bitmaps (P1/P4) for binary masks.
//!
//! ```text
//! scene 100 100
//! fragment 0 closed
//! v 10 10
//! v 90 10
//! v 90 90
//! fragment 1 open
//! v 20 50
//! v 80 55
//! ```

use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::trace::Mask;
use super::ContourFragment;
use crate::error::{Error, Result};
use crate::geom::Point2;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Scene {
    pub width: f64,
    pub height: f64,
    pub fragments: Vec<ContourFragment>,
}

impl Scene {
    pub fn new(width: f64, height: f64, fragments: Vec<ContourFragment>) -> Self {
        Scene {
            width,
            height,
            fragments,
        }
    }
}

/// Parses the text contour format, or JSON when the first non-blank
/// character is `{`.
pub fn parse_scene(text: &str) -> Result<Scene> {
    if text.trim_start().starts_with('{') {
        return serde_json::from_str(text).map_err(|e| Error::parse(e.line(), e.to_string()));
    }
    let mut scene: Option<Scene> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut tok = line.split_whitespace();
        let head = tok.next().unwrap_or_default();
        let rest: Vec<&str> = tok.collect();
        match head {
            "scene" => {
                if scene.is_some() {
                    return Err(Error::parse(line_no, "duplicate scene header"));
                }
                let [w, h] = rest[..] else {
                    return Err(Error::parse(line_no, "expected `scene <width> <height>`"));
                };
                scene = Some(Scene::new(num(w, line_no)?, num(h, line_no)?, Vec::new()));
            }
            "fragment" => {
                let s = scene
                    .as_mut()
                    .ok_or_else(|| Error::parse(line_no, "fragment before scene header"))?;
                let [id, kind] = rest[..] else {
                    return Err(Error::parse(line_no, "expected `fragment <id> <open|closed>`"));
                };
                let id: usize = id
                    .parse()
                    .map_err(|_| Error::parse(line_no, format!("bad fragment id `{id}`")))?;
                let closed = match kind {
                    "open" => false,
                    "closed" => true,
                    other => return Err(Error::parse(line_no, format!("unknown fragment kind `{other}`"))),
                };
                s.fragments.push(ContourFragment {
                    id,
                    vertices: Vec::new(),
                    closed,
                    role: Default::default(),
                });
            }
            "v" => {
                let frag = scene
                    .as_mut()
                    .and_then(|s| s.fragments.last_mut())
                    .ok_or_else(|| Error::parse(line_no, "vertex outside a fragment"))?;
                let [x, y] = rest[..] else {
                    return Err(Error::parse(line_no, "expected `v <x> <y>`"));
                };
                frag.vertices.push(Point2::new(num(x, line_no)?, num(y, line_no)?));
            }
            other => return Err(Error::parse(line_no, format!("unknown record `{other}`"))),
        }
    }
    let scene = scene.ok_or_else(|| Error::parse(0, "missing scene header"))?;
    for f in &scene.fragments {
        if f.vertices.len() < 2 {
            return Err(Error::parse(0, format!("fragment {} has fewer than 2 vertices", f.id)));
        }
    }
    Ok(scene)
}

fn num(s: &str, line: usize) -> Result<f64> {
    let v: f64 = s.parse().map_err(|_| Error::parse(line, format!("bad number `{s}`")))?;
    if !v.is_finite() {
        return Err(Error::parse(line, format!("non-finite number `{s}`")));
    }
    Ok(v)
}

pub fn write_scene_text(scene: &Scene) -> String {
    let mut out = format!("scene {} {}\n", scene.width, scene.height);
    for f in &scene.fragments {
        let _ = writeln!(out, "fragment {} {}", f.id, if f.closed { "closed" } else { "open" });
        for v in &f.vertices {
            let _ = writeln!(out, "v {} {}", v.x, v.y);
        }
    }
    out
}

/// Parses a plain (P1) or raw (P4) portable bitmap; `1` bits are foreground.
pub fn parse_pbm(bytes: &[u8]) -> Result<Mask> {
    let mut pos = 0;
    let magic = next_token(bytes, &mut pos).ok_or_else(|| Error::parse(1, "empty bitmap"))?;
    let width = header_int(bytes, &mut pos)?;
    let height = header_int(bytes, &mut pos)?;
    let mut mask = Mask::new(width, height);
    match magic.as_str() {
        "P1" => {
            let mut k = 0;
            while k < width * height {
                while pos < bytes.len() && (bytes[pos].is_ascii_whitespace() || bytes[pos] == b'#') {
                    if bytes[pos] == b'#' {
                        skip_comment(bytes, &mut pos);
                    } else {
                        pos += 1;
                    }
                }
                match bytes.get(pos) {
                    Some(b'0') => mask.data[k] = false,
                    Some(b'1') => mask.data[k] = true,
                    Some(c) => return Err(Error::parse(0, format!("bad bitmap digit `{}`", *c as char))),
                    None => return Err(Error::parse(0, "truncated bitmap")),
                }
                pos += 1;
                k += 1;
            }
        }
        "P4" => {
            pos += 1; // single whitespace after the header
            let row_bytes = width.div_ceil(8);
            if bytes.len() < pos + row_bytes * height {
                return Err(Error::parse(0, "truncated bitmap"));
            }
            for y in 0..height {
                for x in 0..width {
                    let byte = bytes[pos + y * row_bytes + x / 8];
                    mask.data[y * width + x] = byte & (0x80 >> (x % 8)) != 0;
                }
            }
        }
        other => return Err(Error::parse(1, format!("unsupported bitmap magic `{other}`"))),
    }
    if width == 0 || height == 0 {
        return Err(Error::parse(1, "empty bitmap"));
    }
    Ok(mask)
}

fn skip_comment(bytes: &[u8], pos: &mut usize) {
    while *pos < bytes.len() && bytes[*pos] != b'\n' {
        *pos += 1;
    }
}

fn next_token(bytes: &[u8], pos: &mut usize) -> Option<String> {
    loop {
        while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
            *pos += 1;
        }
        if *pos < bytes.len() && bytes[*pos] == b'#' {
            skip_comment(bytes, pos);
            continue;
        }
        break;
    }
    let start = *pos;
    while *pos < bytes.len() && !bytes[*pos].is_ascii_whitespace() {
        *pos += 1;
    }
    (start < *pos).then(|| String::from_utf8_lossy(&bytes[start..*pos]).into_owned())
}

fn header_int(bytes: &[u8], pos: &mut usize) -> Result<usize> {
    let t = next_token(bytes, pos).ok_or_else(|| Error::parse(1, "truncated bitmap header"))?;
    t.parse()
        .map_err(|_| Error::parse(1, format!("bad bitmap dimension `{t}`")))
}

/// Reads a contour scene (`.txt`/`.json`) or a bitmap (`.pbm`), tracing and
/// returning its boundaries for the latter.
pub fn read_scene(path: &Path) -> Result<Scene> {
    let bytes = std::fs::read(path).map_err(|e| Error::io(path, e))?;
    let is_pbm = path.extension().is_some_and(|e| e.eq_ignore_ascii_case("pbm"))
        || bytes.starts_with(b"P1")
        || bytes.starts_with(b"P4");
    if is_pbm {
        let mask = parse_pbm(&bytes)?;
        let fragments = super::trace_binary_mask(&mask);
        return Ok(Scene::new(mask.width as f64, mask.height as f64, fragments));
    }
    let text = String::from_utf8(bytes).map_err(|_| Error::parse(0, "scene file is not UTF-8"))?;
    parse_scene(&text)
}
