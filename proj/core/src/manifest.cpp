#include "voxal/manifest.hpp"

#include <sstream>
#include <stdexcept>

#include "voxal/textio.hpp"
#include "voxal/volume_io.hpp"

namespace voxal {

void write_manifest(const std::filesystem::path& path, const DatasetManifest& m) {
    std::ostringstream out;
    out << "task = " << task_name(m.task) << "\n";
    out << "num_classes = " << m.num_classes << "\n";
    out << "seed = " << m.seed << "\n";
    for (const auto& [vol, lab] : m.train) {
        out << "train_volume = " << vol << "\n";
        out << "train_labels = " << lab << "\n";
    }
    for (const auto& [vol, lab] : m.test) {
        out << "test_volume = " << vol << "\n";
        out << "test_labels = " << lab << "\n";
    }
    write_text_file(path, out.str());
}

DatasetManifest read_manifest(const std::filesystem::path& path) {
    DatasetManifest m;
    bool saw_task = false, saw_classes = false, saw_seed = false;
    std::vector<std::string> train_vols, train_labs, test_vols, test_labs;

    for (const KvEntry& e : parse_kv_file(path)) {
        if (e.key == "task") {
            m.task = parse_task(e.value);
            saw_task = true;
        } else if (e.key == "num_classes") {
            m.num_classes = static_cast<int>(parse_int(e.value));
            saw_classes = true;
        } else if (e.key == "seed") {
            m.seed = parse_uint(e.value);
            saw_seed = true;
        } else if (e.key == "train_volume") {
            train_vols.push_back(e.value);
        } else if (e.key == "train_labels") {
            train_labs.push_back(e.value);
        } else if (e.key == "test_volume") {
            test_vols.push_back(e.value);
        } else if (e.key == "test_labels") {
            test_labs.push_back(e.value);
        } else {
            throw std::runtime_error(path.string() + ":" + std::to_string(e.line) +
                                     ": unknown manifest key '" + e.key + "'");
        }
    }
    if (!saw_task || !saw_classes || !saw_seed)
        throw std::runtime_error(path.string() + ": manifest must set task, num_classes, seed");
    if (m.num_classes != task_classes(m.task))
        throw std::runtime_error(path.string() + ": num_classes inconsistent with task");
    if (train_vols.size() != train_labs.size() || test_vols.size() != test_labs.size())
        throw std::runtime_error(path.string() + ": unpaired volume/label entries");
    if (train_vols.empty()) throw std::runtime_error(path.string() + ": no training volumes");
    for (std::size_t i = 0; i < train_vols.size(); ++i) m.train.emplace_back(train_vols[i], train_labs[i]);
    for (std::size_t i = 0; i < test_vols.size(); ++i) m.test.emplace_back(test_vols[i], test_labs[i]);
    return m;
}

Dataset load_dataset(const std::filesystem::path& manifest_path) {
    Dataset ds;
    ds.manifest = read_manifest(manifest_path);
    const std::filesystem::path base = manifest_path.parent_path();

    auto load_pair = [&](const std::pair<std::string, std::string>& entry, std::vector<Volume>& vols,
                         std::vector<LabelVolume>& labs) {
        Volume v = read_volume(base / entry.first);
        LabelVolume l = read_labels(base / entry.second, ds.manifest.num_classes);
        if (!(v.dims == l.dims))
            throw std::runtime_error("dataset: dims mismatch between " + entry.first + " and " +
                                     entry.second);
        vols.push_back(std::move(v));
        labs.push_back(std::move(l));
    };
    for (const auto& entry : ds.manifest.train) load_pair(entry, ds.train_volumes, ds.train_gt);
    for (const auto& entry : ds.manifest.test) load_pair(entry, ds.test_volumes, ds.test_gt);

    const Dims dims = ds.train_volumes.front().dims;
    for (const auto& v : ds.train_volumes)
        if (!(v.dims == dims)) throw std::runtime_error("dataset: training volumes disagree on dims");
    for (const auto& v : ds.test_volumes)
        if (!(v.dims == dims)) throw std::runtime_error("dataset: test volumes disagree on dims");
    return ds;
}

}  // namespace voxal
