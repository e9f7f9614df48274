pub mod algebra;
pub mod frobext;
pub mod gorenstein;
pub mod io;
pub mod linalg;
pub mod modcat;
pub mod oracle;
pub mod resolve;
