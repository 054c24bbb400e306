#include "fcmppt/model_io.hpp"

#include "fcmppt/errors.hpp"
#include "fcmppt/io.hpp"

#include <sstream>

namespace fcmppt {
namespace {

constexpr const char* kMagic = "fcmppt-model v1";

std::string norm_block(const EstimatorNorm& norm) {
    std::string out;
    out += "norm T " + format_sig(norm.t.lo, 17) + ' ' + format_sig(norm.t.hi, 17) + '\n';
    out += "norm lambda " + format_sig(norm.l.lo, 17) + ' ' + format_sig(norm.l.hi, 17) + '\n';
    out += "norm vmax " + format_sig(norm.v.lo, 17) + ' ' + format_sig(norm.v.hi, 17) + '\n';
    return out;
}

class LineReader {
public:
    explicit LineReader(const std::string& text) : in_(text) {}

    std::istringstream line() {
        std::string raw;
        while (std::getline(in_, raw)) {
            if (!raw.empty() && raw.back() == '\r') raw.pop_back();
            if (!raw.empty()) return std::istringstream(raw);
        }
        throw config_error("model file truncated");
    }

private:
    std::istringstream in_;
};

void expect(std::istringstream& line, const std::string& token) {
    std::string got;
    line >> got;
    if (got != token) {
        throw config_error("model file: expected '" + token + "', got '" + got + "'");
    }
}

NormSpec read_norm(LineReader& reader, const std::string& signal) {
    auto line = reader.line();
    expect(line, "norm");
    expect(line, signal);
    NormSpec spec;
    if (!(line >> spec.lo >> spec.hi)) {
        throw config_error("model file: bad norm line for " + signal);
    }
    return spec;
}

std::string read_header(LineReader& reader, const std::string& expected_type) {
    auto magic = reader.line();
    std::string word, version;
    magic >> word >> version;
    if (word != "fcmppt-model" || version != "v1") {
        throw config_error("not a fcmppt model file (bad magic)");
    }
    auto type_line = reader.line();
    expect(type_line, "type");
    std::string type;
    type_line >> type;
    if (type != expected_type) {
        throw config_error("model file holds type '" + type + "', expected '" +
                           expected_type + "'");
    }
    return type;
}

} // namespace

std::string anfis_to_text(const AnfisModel& model) {
    std::string out = std::string(kMagic) + "\ntype anfis\n";
    out += norm_block(model.norm);
    for (int i = 0; i < 3; ++i) {
        out += "mf T " + std::to_string(i) + ' ' + format_sig(model.mf_t[i].center, 17) +
               ' ' + format_sig(model.mf_t[i].sigma, 17) + '\n';
    }
    for (int i = 0; i < 3; ++i) {
        out += "mf lambda " + std::to_string(i) + ' ' + format_sig(model.mf_l[i].center, 17) +
               ' ' + format_sig(model.mf_l[i].sigma, 17) + '\n';
    }
    for (int r = 0; r < 9; ++r) {
        out += "consequent " + std::to_string(r);
        for (double c : model.consequents[r]) out += ' ' + format_sig(c, 17);
        out += '\n';
    }
    return out;
}

AnfisModel anfis_from_text(const std::string& text) {
    LineReader reader(text);
    read_header(reader, "anfis");

    AnfisModel model;
    model.norm.t = read_norm(reader, "T");
    model.norm.l = read_norm(reader, "lambda");
    model.norm.v = read_norm(reader, "vmax");

    auto read_mf = [&](const std::string& signal, int index) {
        auto line = reader.line();
        expect(line, "mf");
        expect(line, signal);
        int i;
        GaussianMf mf{};
        if (!(line >> i >> mf.center >> mf.sigma) || i != index || mf.sigma <= 0.0) {
            throw config_error("model file: bad mf line for " + signal);
        }
        return mf;
    };
    for (int i = 0; i < 3; ++i) model.mf_t[i] = read_mf("T", i);
    for (int i = 0; i < 3; ++i) model.mf_l[i] = read_mf("lambda", i);

    for (int r = 0; r < 9; ++r) {
        auto line = reader.line();
        expect(line, "consequent");
        int idx;
        if (!(line >> idx >> model.consequents[r][0] >> model.consequents[r][1] >>
              model.consequents[r][2]) ||
            idx != r) {
            throw config_error("model file: bad consequent line");
        }
    }
    return model;
}

void save_anfis(const AnfisModel& model, const std::string& path) {
    write_file_atomic(path, anfis_to_text(model));
}

AnfisModel load_anfis(const std::string& path) {
    return anfis_from_text(read_file(path));
}

std::string mlp_to_text(const MlpNetwork& net) {
    std::string out = std::string(kMagic) + "\ntype mlp\n";
    out += norm_block(net.norm);
    out += "hidden " + std::to_string(net.arch.hidden) + '\n';
    out += "weights";
    for (double w : net.weights) out += ' ' + format_sig(w, 17);
    out += '\n';
    return out;
}

MlpNetwork mlp_from_text(const std::string& text) {
    LineReader reader(text);
    read_header(reader, "mlp");

    MlpNetwork net;
    net.norm.t = read_norm(reader, "T");
    net.norm.l = read_norm(reader, "lambda");
    net.norm.v = read_norm(reader, "vmax");

    auto hidden_line = reader.line();
    expect(hidden_line, "hidden");
    if (!(hidden_line >> net.arch.hidden) || net.arch.hidden < 1) {
        throw config_error("model file: bad hidden width");
    }

    auto weights_line = reader.line();
    expect(weights_line, "weights");
    double w;
    while (weights_line >> w) net.weights.push_back(w);
    if (static_cast<int>(net.weights.size()) != net.arch.weight_count()) {
        throw config_error("model file: weight count does not match the architecture");
    }
    return net;
}

void save_mlp(const MlpNetwork& net, const std::string& path) {
    write_file_atomic(path, mlp_to_text(net));
}

MlpNetwork load_mlp(const std::string& path) {
    return mlp_from_text(read_file(path));
}

} // namespace fcmppt
