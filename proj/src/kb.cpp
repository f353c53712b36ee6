#include "jel/kb.hpp"

#include <stdexcept>

#include "jel/textio.hpp"

namespace jel {

void KnowledgeBase::add(Entity e) {
    if (e.id.empty()) throw std::invalid_argument("entity with empty id");
    if (e.id.find_first_of(" \t\n") != std::string::npos) {
        throw std::invalid_argument("entity id contains whitespace: '" + e.id + "'");
    }
    if (e.name.empty()) throw std::invalid_argument("entity '" + e.id + "' has empty name");
    if (by_id_.contains(e.id)) throw std::invalid_argument("duplicate entity id: '" + e.id + "'");
    const std::size_t row = entities_.size();
    by_id_.emplace(e.id, row);
    by_name_[e.name].push_back(row);
    entities_.push_back(std::move(e));
}

const Entity* KnowledgeBase::find(const std::string& id) const {
    auto it = by_id_.find(id);
    return it == by_id_.end() ? nullptr : &entities_[it->second];
}

std::optional<std::size_t> KnowledgeBase::row_of(const std::string& id) const {
    auto it = by_id_.find(id);
    if (it == by_id_.end()) return std::nullopt;
    return it->second;
}

std::vector<std::string> KnowledgeBase::ids_by_name(const std::string& name) const {
    std::vector<std::string> ids;
    auto it = by_name_.find(name);
    if (it == by_name_.end()) return ids;
    for (std::size_t row : it->second) ids.push_back(entities_[row].id);
    return ids;
}

std::size_t KnowledgeBase::name_index_entries() const {
    std::size_t total = 0;
    for (const auto& [name, rows] : by_name_) total += rows.size();
    return total;
}

KnowledgeBase load_kb(const std::filesystem::path& path) {
    KnowledgeBase kb;
    auto lines = read_lines(path);
    for (std::size_t i = 0; i < lines.size(); ++i) {
        if (lines[i].empty()) continue;
        auto fields = split_tabs(lines[i]);
        if (fields.size() != 3 && fields.size() != 4) {
            throw ParseError("entities file line " + std::to_string(i + 1) +
                             ": expected id<TAB>name<TAB>description[<TAB>industry]");
        }
        Entity e;
        e.id = fields[0];
        e.name = fields[1];
        e.description = fields[2];
        if (fields.size() == 4) e.industry = fields[3];
        try {
            kb.add(std::move(e));
        } catch (const std::invalid_argument& err) {
            throw ParseError("entities file line " + std::to_string(i + 1) + ": " + err.what());
        }
    }
    return kb;
}

void save_kb(const KnowledgeBase& kb, const std::filesystem::path& path) {
    std::string out;
    for (const Entity& e : kb.entities()) {
        out += e.id + "\t" + e.name + "\t" + e.description;
        if (!e.industry.empty()) out += "\t" + e.industry;
        out += "\n";
    }
    write_file(path, out);
}

}  // namespace jel
