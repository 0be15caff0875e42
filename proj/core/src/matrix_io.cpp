#include "screens/matrix_io.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

namespace screens {

OrderBasis BlockRecord::basis() const {
    return OrderBasis(period, order_cutoff, ImaginaryFrequency(kappa), TransverseMomentum(kx, ky));
}

ReflectionBlock BlockRecord::as_reflection() const {
    if (kind != "reflection") throw config_error("BlockRecord: not a reflection block");
    return ReflectionBlock(channel_in, channel_out, basis(), matrix);
}

TransmissionBlock BlockRecord::as_transmission() const {
    if (kind != "transmission") throw config_error("BlockRecord: not a transmission block");
    return TransmissionBlock(channel_in, channel_out, basis(), matrix);
}

namespace {

template <typename Block>
BlockRecord record_of(const Block& block, const char* kind) {
    BlockRecord r;
    r.kind = kind;
    r.channel_in = block.channel_in;
    r.channel_out = block.channel_out;
    r.period = block.basis.period();
    r.order_cutoff = block.basis.order_cutoff();
    r.kappa = block.basis.frequency().kappa;
    r.kx = block.basis.transverse().kx;
    r.ky = block.basis.transverse().ky;
    r.matrix = block.matrix;
    return r;
}

} // namespace

BlockRecord make_record(const ReflectionBlock& block) { return record_of(block, "reflection"); }
BlockRecord make_record(const TransmissionBlock& block) { return record_of(block, "transmission"); }

void write_block(std::ostream& os, const BlockRecord& r) {
    os << "casimir-screens-matrix v1\n";
    os << "kind " << r.kind << "\n";
    os << "channel_in " << channel_name(r.channel_in) << "\n";
    os << "channel_out " << channel_name(r.channel_out) << "\n";
    os << std::setprecision(17);
    os << "period " << r.period << "\n";
    os << "order_cutoff " << r.order_cutoff << "\n";
    os << "kappa " << r.kappa << "\n";
    os << "kx " << r.kx << "\n";
    os << "ky " << r.ky << "\n";
    os << "rows " << r.matrix.rows() << "\n";
    os << "cols " << r.matrix.cols() << "\n";
    os << "data\n";
    for (Eigen::Index i = 0; i < r.matrix.rows(); ++i) {
        for (Eigen::Index j = 0; j < r.matrix.cols(); ++j) {
            if (j) os << ' ';
            os << r.matrix(i, j).real() << ' ' << r.matrix(i, j).imag();
        }
        os << '\n';
    }
}

BlockRecord read_block(std::istream& is) {
    BlockRecord r;
    std::string line;
    if (!std::getline(is, line) || line != "casimir-screens-matrix v1")
        throw config_error("matrix_io: missing or unsupported format header");
    long rows = -1, cols = -1;
    while (std::getline(is, line)) {
        if (line == "data") break;
        std::istringstream ls(line);
        std::string key;
        ls >> key;
        if (key == "kind")
            ls >> r.kind;
        else if (key == "channel_in") {
            std::string v;
            ls >> v;
            r.channel_in = channel_from_name(v);
        } else if (key == "channel_out") {
            std::string v;
            ls >> v;
            r.channel_out = channel_from_name(v);
        } else if (key == "period")
            ls >> r.period;
        else if (key == "order_cutoff")
            ls >> r.order_cutoff;
        else if (key == "kappa")
            ls >> r.kappa;
        else if (key == "kx")
            ls >> r.kx;
        else if (key == "ky")
            ls >> r.ky;
        else if (key == "rows")
            ls >> rows;
        else if (key == "cols")
            ls >> cols;
        else
            throw config_error("matrix_io: unknown header key '" + key + "'");
        if (ls.fail()) throw config_error("matrix_io: malformed header line '" + line + "'");
    }
    if (rows < 0 || cols < 0) throw config_error("matrix_io: missing rows/cols");
    if (r.kind != "reflection" && r.kind != "transmission")
        throw config_error("matrix_io: kind must be reflection or transmission");
    r.matrix.resize(rows, cols);
    for (long i = 0; i < rows; ++i) {
        for (long j = 0; j < cols; ++j) {
            double re = 0.0, im = 0.0;
            if (!(is >> re >> im)) throw config_error("matrix_io: truncated data block");
            r.matrix(i, j) = Complex(re, im);
        }
    }
    return r;
}

void write_block_file(const std::string& path, const BlockRecord& record) {
    std::ofstream os(path);
    if (!os) throw config_error("matrix_io: cannot open '" + path + "' for writing");
    write_block(os, record);
}

BlockRecord read_block_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw config_error("matrix_io: cannot open '" + path + "'");
    return read_block(is);
}

} // namespace screens
