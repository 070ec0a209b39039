#include "catamatch/run.hpp"

#include <algorithm>
#include <fstream>

#include "catamatch/errors.hpp"

namespace cm {

u64 mix_seed(u64 seed, u64 salt) {
    // splitmix64 finalizer over seed xor a salt stride
    u64 z = seed ^ (salt * 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

u64 Runtime::value_set_size(u64 desk_default, u64 paper_default) const {
    if (params_.value_set_size) return *params_.value_set_size;
    return params_.paper_params ? paper_default : desk_default;
}

std::size_t Runtime::block_count(std::size_t desk_default, std::size_t paper_default) const {
    if (params_.blocks) return *params_.blocks;
    return params_.paper_params ? paper_default : desk_default;
}

u64 Runtime::weight_bound(u64 desk_default, u64 paper_default) const {
    if (params_.w_max) return *params_.w_max;
    return params_.paper_params ? paper_default : desk_default;
}

CatalyticTape Runtime::make_tape(u64 salt, std::size_t values_per_block,
                                 std::size_t blocks, const FieldSpec& spec) const {
    if (values_per_block == 0 || blocks == 0)
        throw InvalidInput("tape needs at least one value per block and one block");
    if (params_.tape_file) {
        std::ifstream in(*params_.tape_file, std::ios::binary);
        if (!in) throw InvalidInput("cannot open tape file: " + *params_.tape_file);
        std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                        std::istreambuf_iterator<char>());
        // Rotate by the salt so nested subproblems read different bits.
        if (!bytes.empty()) {
            const std::size_t off = static_cast<std::size_t>(mix_seed(0, salt) % bytes.size());
            std::rotate(bytes.begin(), bytes.begin() + static_cast<std::ptrdiff_t>(off), bytes.end());
        }
        return CatalyticTape::from_bytes(bytes, values_per_block, blocks, spec);
    }
    return CatalyticTape::from_seed(mix_seed(params_.tape_seed, salt), values_per_block,
                                    blocks, spec);
}

} // namespace cm
