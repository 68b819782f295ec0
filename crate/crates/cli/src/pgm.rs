//! Minimal PGM (P2 / P5) reader and P5 writer. Gray levels are kept raw,
//! which general-purpose image decoders do not guarantee for 16-bit data.

use morphograph::weight::levels;
use morphograph::WeightedGraph;

use crate::CliError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Image {
    pub width: usize,
    pub height: usize,
    pub maxval: u32,
    pub pixels: Vec<u32>,
}

fn malformed(msg: impl Into<String>) -> CliError {
    CliError::MalformedImage(msg.into())
}

/// Header tokens, skipping `#` comments; returns the offset after the
/// single whitespace byte that ends the header.
fn header(bytes: &[u8]) -> Result<([u32; 3], usize), CliError> {
    let mut vals = [0u32; 3];
    let mut pos = 2;
    for v in vals.iter_mut() {
        loop {
            match bytes.get(pos) {
                Some(b'#') => {
                    while bytes.get(pos).is_some_and(|&b| b != b'\n') {
                        pos += 1;
                    }
                }
                Some(b) if b.is_ascii_whitespace() => pos += 1,
                Some(_) => break,
                None => return Err(malformed("truncated header")),
            }
        }
        let start = pos;
        while bytes.get(pos).is_some_and(|b| b.is_ascii_digit()) {
            pos += 1;
        }
        *v = std::str::from_utf8(&bytes[start..pos])
            .ok()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| malformed("bad header number"))?;
    }
    match bytes.get(pos) {
        Some(b) if b.is_ascii_whitespace() => Ok((vals, pos + 1)),
        _ => Err(malformed("header not terminated")),
    }
}

pub fn parse_pgm(bytes: &[u8]) -> Result<Image, CliError> {
    let magic = bytes.get(..2).ok_or_else(|| malformed("empty file"))?;
    let ascii = match magic {
        b"P2" => true,
        b"P5" => false,
        _ => return Err(malformed("not a P2/P5 graymap")),
    };
    let ([width, height, maxval], body) = header(bytes)?;
    if width == 0 || height == 0 {
        return Err(malformed("empty image"));
    }
    if maxval == 0 || maxval > 65535 {
        return Err(malformed(format!("maxval {maxval} out of range")));
    }
    let n = width as usize * height as usize;
    let pixels: Vec<u32> = if ascii {
        let text = std::str::from_utf8(&bytes[body..]).map_err(|_| malformed("non-ASCII raster"))?;
        let vals: Result<Vec<u32>, _> =
            text.lines().map(|l| l.split('#').next().unwrap_or("")).flat_map(str::split_whitespace).map(str::parse).collect();
        vals.map_err(|_| malformed("bad raster value"))?
    } else if maxval < 256 {
        bytes[body..].iter().take(n).map(|&b| b as u32).collect()
    } else {
        bytes[body..].chunks_exact(2).take(n).map(|c| u16::from_be_bytes([c[0], c[1]]) as u32).collect()
    };
    if pixels.len() != n {
        return Err(malformed(format!("expected {n} pixels, found {}", pixels.len())));
    }
    if let Some(p) = pixels.iter().find(|&&p| p > maxval) {
        return Err(malformed(format!("pixel {p} exceeds maxval {maxval}")));
    }
    Ok(Image { width: width as usize, height: height as usize, maxval, pixels })
}

/// Pixel adjacency graph: one node per pixel in row-major order, weighted
/// by gray level; 4- or 8-connectivity.
pub fn image_to_graph(img: &Image, connectivity: u8) -> Result<WeightedGraph, CliError> {
    let offsets: &[(isize, isize)] = match connectivity {
        4 => &[(0, 1), (1, 0)],
        8 => &[(0, 1), (1, -1), (1, 0), (1, 1)],
        c => return Err(CliError::Usage(format!("connectivity must be 4 or 8, got {c}"))),
    };
    let (w, h) = (img.width as isize, img.height as isize);
    let mut edges = Vec::new();
    for r in 0..h {
        for c in 0..w {
            for &(dr, dc) in offsets {
                let (r2, c2) = (r + dr, c + dc);
                if (0..h).contains(&r2) && (0..w).contains(&c2) {
                    edges.push(((r * w + c) as usize, (r2 * w + c2) as usize));
                }
            }
        }
    }
    Ok(WeightedGraph::new(img.pixels.len(), edges)?.with_node_weights(levels(&img.pixels))?)
}

/// Binary 8-bit graymap.
pub fn write_pgm(width: usize, height: usize, pixels: &[u8]) -> Vec<u8> {
    let mut out = format!("P5\n{width} {height}\n255\n").into_bytes();
    out.extend_from_slice(pixels);
    out
}
