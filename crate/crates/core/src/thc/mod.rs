//! The standard and bar Tensor-Hom-Cotensor situations on complexes.

mod adjunction;
mod bar;
mod hom;
mod tensor;

pub use adjunction::{
    adj_cotensor_tensor, adj_hom_tensor, adj_tensor_cotensor, adj_tensor_hom, enriched_adjunction, flat_cotensor, flat_hom, sharp_cotensor,
    sharp_hom, transpose_from_cotensor, transpose_from_hom, transpose_to_cotensor, transpose_to_hom, EnrichedAdjunction,
};
pub use bar::{
    alpha, bar_adj_cotensor_tensor, bar_adj_hom_tensor, bar_adj_tensor_cotensor, bar_adj_tensor_hom, bar_cotensor, bar_hom,
    bar_hom_disk_iso, bar_tensor, bar_tensor_disk_iso, homgr_bar, homgr_bar_cotensor_iso, homgr_bar_hom_iso, BarTensor, CycleComplex,
    HomgrBarIso,
};
pub use hom::{cotensor_complex, hom_complex, homgr, homgr_translate, Factor, GradedFamily, HomComplex, Mode};
pub use tensor::{
    cone_tensor_iso, leibniz, sigma_translate, tensor_chain_map, tensor_complex, tensor_graded, ConeTensorIso, Leibniz, Summand,
    TensorComplex, TranslationIso,
};
