//! Pixel rendering of grids as binary portable pixmaps (PPM `P6`).

use crate::grid::Grid;

pub type Palette = [[u8; 3]; 10];

/// The customary ARC display colors for symbols 0..=9.
pub const ARC_PALETTE: Palette = [
    [0x00, 0x00, 0x00],
    [0x00, 0x74, 0xD9],
    [0xFF, 0x41, 0x36],
    [0x2E, 0xCC, 0x40],
    [0xFF, 0xDC, 0x00],
    [0xAA, 0xAA, 0xAA],
    [0xF0, 0x12, 0xBE],
    [0xFF, 0x85, 0x1B],
    [0x7F, 0xDB, 0xFF],
    [0x87, 0x0C, 0x25],
];

/// Renders each cell as a `cell_px × cell_px` block of its palette color.
///
/// # Panics
/// If `cell_px` is zero.
pub fn render_grid(g: &Grid, cell_px: usize, palette: &Palette) -> Vec<u8> {
    assert!(cell_px >= 1, "cell_px must be at least 1");
    let (w, h) = (g.width() * cell_px, g.height() * cell_px);
    let mut out = format!("P6\n{w} {h}\n255\n").into_bytes();
    out.reserve(w * h * 3);
    for row in g.rows() {
        let line: Vec<u8> = row
            .iter()
            .flat_map(|s| std::iter::repeat_n(palette[s.value() as usize], cell_px))
            .flatten()
            .collect();
        for _ in 0..cell_px {
            out.extend_from_slice(&line);
        }
    }
    out
}
