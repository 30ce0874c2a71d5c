use thiserror::Error;

#[derive(Debug, Error)]
pub enum SimError {
    #[error("register of {k} qubits exceeds the cap of {max}")]
    TooManyQubits { k: usize, max: usize },

    #[error("register must hold at least one qubit")]
    EmptyRegister,

    #[error("model has {model_k} spins but the register has {state_k} qubits")]
    DimensionMismatch { model_k: usize, state_k: usize },

    #[error("depth {depth} outside schedule range 1..={p}")]
    DepthOutOfRange { depth: usize, p: usize },

    #[error("schedule needs equal-length beta/gamma lists with at least one layer")]
    MalformedSchedule,

    #[error("shot count must be at least 1")]
    NoShots,

    #[error("readout flip probability {0} outside [0, 1)")]
    BadFlipProbability(f64),
}
