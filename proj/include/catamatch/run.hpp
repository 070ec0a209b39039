#pragma once

#include <cstddef>
#include <optional>
#include <string>

#include "catamatch/field.hpp"
#include "catamatch/tape.hpp"

namespace cm {

/// Run-wide knobs shared by every solver. Desk defaults keep the enumerations
/// feasible; --paper-params switches to the parameter regime of the analysis
/// (larger value sets, more blocks, strict compression margins).
struct RunParams {
    u64 prime = (1ull << 61) - 1;
    std::optional<u64> value_set_size;   // s override
    std::optional<std::size_t> blocks;   // N override
    std::optional<u64> w_max;            // weight bound override (PM search)
    u64 tape_seed = 0x436174616c797469ull;
    std::optional<std::string> tape_file;
    bool paper_params = false;
    bool check_restore = true;   // verify bit-exact restoration after each run
    u64 seed = 1;                // generator / SZ randomness, separate from the tape
    bool unsafe = false;         // permit overriding safety-critical derived params
};

/// Deterministic 64-bit mixer used to derive independent sub-tape seeds.
u64 mix_seed(u64 seed, u64 salt);

/// Shared context handed around the solvers: parameters plus the tape
/// factory. Each subproblem gets its own tape, derived from the run seed and
/// a caller-chosen salt so that nested solves never share randomness.
class Runtime {
public:
    explicit Runtime(RunParams params) : params_(std::move(params)) {}

    const RunParams& params() const noexcept { return params_; }
    bool paper_params() const noexcept { return params_.paper_params; }
    bool check_restore() const noexcept { return params_.check_restore; }

    /// s from the override or the caller's default.
    u64 value_set_size(u64 desk_default, u64 paper_default) const;
    std::size_t block_count(std::size_t desk_default, std::size_t paper_default) const;
    u64 weight_bound(u64 desk_default, u64 paper_default) const;

    /// A fresh tape for one subproblem. Seeded tapes mix the run tape seed
    /// with the salt; a --tape-file supplies the initial bits instead (the
    /// salt rotates the starting offset so sub-tapes differ).
    CatalyticTape make_tape(u64 salt, std::size_t values_per_block,
                            std::size_t blocks, const FieldSpec& spec) const;

private:
    RunParams params_;
};

} // namespace cm
