//! Writes the depth-6 subdivision of a map as SVG (first argument: map, second: output path).

use trip_stern::geometry::{render_svg, subdivision, SvgOptions};
use trip_stern::{Result, TripMap};

fn main() -> Result<()> {
    let mut args = std::env::args().skip(1);
    let map: TripMap = args.next().unwrap_or_else(|| "e,e,e".into()).parse()?;
    let out = args.next().unwrap_or_else(|| "subdivision.svg".into());
    let cells = subdivision(&map, 6)?;
    let svg = render_svg(&cells, &SvgOptions { labels: true, ..SvgOptions::default() });
    std::fs::write(&out, svg).map_err(|e| trip_stern::Error::Precondition(e.to_string()))?;
    println!("wrote {} cells of {map} to {out}", cells.len());
    Ok(())
}
