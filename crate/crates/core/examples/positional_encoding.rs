//! Positional-encoding table and padded index batches for learners.

use pqa_core::encode::{pe_2d, to_indices, PosEncodingTable};
use pqa_core::grid::Grid;

fn main() {
    println!("pe(0,0), d=8: {:?}", pe_2d(0, 0, 8).unwrap());
    let v = pe_2d(3, 7, 8).unwrap();
    println!("pe(3,7), d=8: {:.4?}", v);

    let table = PosEncodingTable::new(64).unwrap();
    let mut bytes = Vec::new();
    table.write_binary(&mut bytes).unwrap();
    println!("table d=64: {} bytes incl. header", bytes.len());

    let a = Grid::from_rows(&[[1u8, 2], [3, 4]]).unwrap();
    let b = Grid::from_rows(&[[5u8, 5, 5], [0, 0, 0], [9, 9, 9]]).unwrap();
    let batch = to_indices(&[a, b]).unwrap();
    for plane in batch.indices.chunks(batch.width * batch.height) {
        println!("{:?}", plane.chunks(batch.width).collect::<Vec<_>>());
    }
    assert_eq!(batch.unpad().len(), 2);
}
