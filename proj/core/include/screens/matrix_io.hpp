#pragma once

// Plain-text interchange format for scattering blocks, so external codes can
// be conformance-tested against the Babinet verifier:
//
//   casimir-screens-matrix v1
//   kind reflection | transmission
//   channel_in D|N|E|M
//   channel_out D|N|E|M
//   period <float>   order_cutoff <int>   kappa <float>   kx <float>   ky <float>
//   rows <int>  cols <int>
//   data
//   <re im re im ...>   (row-major, one matrix row per line)
//
// Numbers are written with 17 significant digits; a write/read round trip is
// bit-exact for finite doubles.

#include <iosfwd>
#include <string>

#include "screens/wavemodes.hpp"

namespace screens {

struct BlockRecord {
    std::string kind; // "reflection" or "transmission"
    Channel channel_in = Channel::Dirichlet;
    Channel channel_out = Channel::Dirichlet;
    double period = 1.0;
    int order_cutoff = 0;
    double kappa = 0.0;
    double kx = 0.0;
    double ky = 0.0;
    MatrixXcd matrix;

    OrderBasis basis() const;
    ReflectionBlock as_reflection() const;
    TransmissionBlock as_transmission() const;
};

BlockRecord make_record(const ReflectionBlock& block);
BlockRecord make_record(const TransmissionBlock& block);

void write_block(std::ostream& os, const BlockRecord& record);
BlockRecord read_block(std::istream& is);

void write_block_file(const std::string& path, const BlockRecord& record);
BlockRecord read_block_file(const std::string& path);

} // namespace screens
