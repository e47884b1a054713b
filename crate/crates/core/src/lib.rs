pub mod fourval;
pub mod oracle;
pub mod random;
pub mod selftest;
pub mod semantics;
pub mod syntax;
pub mod tableau;
