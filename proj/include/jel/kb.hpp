#pragma once
// Entity catalog. Immutable after load; concurrent reads are safe.

#include <filesystem>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace jel {

struct Entity {
    std::string id;           // opaque, unique, no whitespace
    std::string name;         // display name; duplicates across entities allowed
    std::string description;  // free text, may be empty
    std::string industry;     // optional tag, used by synthetic validation
};

class KnowledgeBase {
public:
    void add(Entity e);  // throws on duplicate/empty id or empty name

    const std::vector<Entity>& entities() const { return entities_; }
    std::size_t size() const { return entities_.size(); }

    const Entity* find(const std::string& id) const;
    const Entity& at(std::size_t row) const { return entities_[row]; }
    std::optional<std::size_t> row_of(const std::string& id) const;

    /// All entity ids carrying this exact display name (the ambiguous-name
    /// case is first-class: several entities may share one name).
    std::vector<std::string> ids_by_name(const std::string& name) const;

    /// Sum of index bucket sizes; equals size() by construction.
    std::size_t name_index_entries() const;

private:
    std::vector<Entity> entities_;
    std::unordered_map<std::string, std::size_t> by_id_;
    std::unordered_map<std::string, std::vector<std::size_t>> by_name_;
};

/// Entities file: one record per line, tab-separated
/// id<TAB>name<TAB>description[<TAB>industry]. UTF-8, no header.
KnowledgeBase load_kb(const std::filesystem::path& path);
void save_kb(const KnowledgeBase& kb, const std::filesystem::path& path);

}  // namespace jel
