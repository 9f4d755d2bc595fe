pub mod connections;
pub mod corpus;
pub mod format;
pub mod hlr;
pub mod linalg;
pub mod oracle;
pub mod report;
pub mod split;
pub mod structure;
