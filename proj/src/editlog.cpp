#include "scriptgrove/editlog.hpp"

#include <istream>
#include <iterator>
#include <sstream>
#include <climits>

#include <json.hpp>

namespace scriptgrove {

namespace {

using nlohmann::json;
using ordered_json = nlohmann::ordered_json;

std::string out_of_bounds_message(std::size_t index, std::size_t line, std::size_t offset,
                                  std::size_t length, std::size_t doc_len)
{
    std::ostringstream os;
    os << "line " << line << ": edit " << index << " at offset " << offset;
    if (length > 0)
        os << " (length " << length << ")";
    os << " is out of bounds for document length " << doc_len;
    return os.str();
}

std::string non_monotonic_message(std::size_t index, std::size_t line, Timestamp t, Timestamp prev)
{
    std::ostringstream os;
    os << "line " << line << ": edit " << index << " has timestamp " << t
       << " earlier than preceding " << prev;
    return os.str();
}

std::size_t checked_index(const json& value, std::size_t line, const char* field)
{
    if (!value.is_number_integer())
        throw MalformedLine(line, std::string("'") + field + "' must be an integer");
    if (value.is_number_unsigned())
        return value.get<std::size_t>();
    auto v = value.get<std::int64_t>();
    if (v < 0)
        throw MalformedLine(line, std::string("'") + field + "' must be non-negative");
    return static_cast<std::size_t>(v);
}

Timestamp checked_time(const json& value, std::size_t line, const char* field)
{
    if (!value.is_number_integer())
        throw MalformedLine(line, std::string("'") + field + "' must be an integer");
    if (value.is_number_unsigned() && value.get<std::uint64_t>() > INT64_MAX)
        throw MalformedLine(line, std::string("'") + field + "' is out of range");
    return value.get<Timestamp>();
}

json parse_object(std::string_view text, std::size_t line)
{
    json obj = json::parse(text.begin(), text.end(), nullptr, false);
    if (obj.is_discarded())
        throw MalformedLine(line, "not valid JSON");
    if (!obj.is_object())
        throw MalformedLine(line, "expected a JSON object");
    return obj;
}

// Running state shared by the parser and validate_log.
struct Replayer {
    std::size_t doc_len = 0;
    Timestamp last_time = INT64_MIN;

    void apply(const AtomicEdit& e, std::size_t index, std::size_t line)
    {
        if (e.time < last_time)
            throw NonMonotonicTimestamp(index, line, e.time, last_time);
        if (e.kind == EditKind::Insert) {
            if (e.text.empty())
                throw MalformedLine(line, "insert text must be non-empty");
            if (e.offset > doc_len)
                throw OutOfBoundsEdit(index, line, e.offset, 0, doc_len);
            doc_len += e.text.size();
        } else {
            if (e.length == 0)
                throw MalformedLine(line, "delete length must be at least 1");
            if (e.offset > doc_len || e.length > doc_len - e.offset)
                throw OutOfBoundsEdit(index, line, e.offset, e.length, doc_len);
            doc_len -= e.length;
        }
        last_time = e.time;
    }
};

AtomicEdit parse_edit(const json& obj, std::size_t line, Timestamp previous_time)
{
    for (const auto& [key, _] : obj.items()) {
        if (key != "t" && key != "kind" && key != "offset" && key != "text" && key != "length")
            throw MalformedLine(line, "unknown field '" + key + "'");
    }
    auto kind_it = obj.find("kind");
    if (kind_it == obj.end() || !kind_it->is_string())
        throw MalformedLine(line, "missing string field 'kind'");
    auto offset_it = obj.find("offset");
    if (offset_it == obj.end())
        throw MalformedLine(line, "missing field 'offset'");

    AtomicEdit e;
    auto t_it = obj.find("t");
    e.time = t_it == obj.end() ? previous_time : checked_time(*t_it, line, "t");
    e.offset = checked_index(*offset_it, line, "offset");

    const auto& kind = kind_it->get_ref<const std::string&>();
    if (kind == "insert") {
        e.kind = EditKind::Insert;
        if (obj.contains("length"))
            throw MalformedLine(line, "insert must not carry 'length'");
        auto text_it = obj.find("text");
        if (text_it == obj.end() || !text_it->is_string())
            throw MalformedLine(line, "insert requires string field 'text'");
        try {
            e.text = utf8_to_text(text_it->get_ref<const std::string&>());
        } catch (const std::invalid_argument& ex) {
            throw MalformedLine(line, ex.what());
        }
        if (e.text.empty())
            throw MalformedLine(line, "insert text must be non-empty");
    } else if (kind == "delete") {
        e.kind = EditKind::Delete;
        if (obj.contains("text"))
            throw MalformedLine(line, "delete must not carry 'text'");
        auto len_it = obj.find("length");
        if (len_it == obj.end())
            throw MalformedLine(line, "delete requires field 'length'");
        e.length = checked_index(*len_it, line, "length");
        if (e.length == 0)
            throw MalformedLine(line, "delete length must be at least 1");
    } else {
        throw MalformedLine(line, "unknown kind '" + kind + "'");
    }
    return e;
}

} // namespace

std::string_view to_string(EditKind kind)
{
    return kind == EditKind::Insert ? "insert" : "delete";
}

MalformedLine::MalformedLine(std::size_t line_no, const std::string& reason)
    : LogError("line " + std::to_string(line_no) + ": malformed: " + reason), line(line_no)
{
}

OutOfBoundsEdit::OutOfBoundsEdit(std::size_t index_, std::size_t line_, std::size_t offset_,
                                 std::size_t length_, std::size_t doc_len_)
    : LogError(out_of_bounds_message(index_, line_, offset_, length_, doc_len_)),
      index(index_), line(line_), offset(offset_), length(length_), doc_len(doc_len_)
{
}

NonMonotonicTimestamp::NonMonotonicTimestamp(std::size_t index_, std::size_t line_, Timestamp time,
                                             Timestamp previous)
    : LogError(non_monotonic_message(index_, line_, time, previous)), index(index_), line(line_)
{
}

EditLog parse_log(std::string_view input)
{
    EditLog log;
    bool have_header = false;
    Replayer replay;
    std::size_t line_no = 0;

    std::size_t pos = 0;
    while (pos <= input.size()) {
        auto end = input.find('\n', pos);
        if (end == std::string_view::npos)
            end = input.size();
        auto line = input.substr(pos, end - pos);
        pos = end + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r')
            line.remove_suffix(1);
        if (line.find_first_not_of(" \t") == std::string_view::npos)
            continue;

        json obj = parse_object(line, line_no);
        if (!have_header) {
            for (const auto& [key, _] : obj.items()) {
                if (key != "doc_id" && key != "created_at")
                    throw MalformedLine(line_no, "unknown header field '" + key + "'");
            }
            auto id_it = obj.find("doc_id");
            auto created_it = obj.find("created_at");
            if (id_it == obj.end() || !id_it->is_string())
                throw MalformedLine(line_no, "header requires string field 'doc_id'");
            if (created_it == obj.end())
                throw MalformedLine(line_no, "header requires field 'created_at'");
            log.doc_id = id_it->get<std::string>();
            log.created_at = checked_time(*created_it, line_no, "created_at");
            replay.last_time = log.created_at;
            have_header = true;
            continue;
        }

        auto edit = parse_edit(obj, line_no, replay.last_time);
        replay.apply(edit, log.edits.size(), line_no);
        log.edits.push_back(std::move(edit));
    }
    if (!have_header)
        throw MalformedLine(line_no == 0 ? 1 : line_no, "missing header line");
    return log;
}

EditLog parse_log(std::istream& in)
{
    std::string data{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
    return parse_log(std::string_view(data));
}

void validate_log(const EditLog& log)
{
    Replayer replay{0, log.created_at};
    for (std::size_t i = 0; i < log.edits.size(); ++i)
        replay.apply(log.edits[i], i, i + 2);
}

std::string serialize_log(const EditLog& log)
{
    std::string out;
    ordered_json header;
    header["doc_id"] = log.doc_id;
    header["created_at"] = log.created_at;
    out += header.dump();
    out += '\n';
    for (const auto& e : log.edits) {
        ordered_json line;
        line["t"] = e.time;
        line["kind"] = to_string(e.kind);
        line["offset"] = e.offset;
        if (e.kind == EditKind::Insert)
            line["text"] = text_to_utf8(e.text);
        else
            line["length"] = e.length;
        out += line.dump();
        out += '\n';
    }
    return out;
}

Text replay_naive(const EditLog& log, std::optional<Timestamp> upto)
{
    Text doc;
    for (const auto& e : log.edits) {
        if (upto && e.time > *upto)
            break;
        if (e.kind == EditKind::Insert)
            doc.insert(e.offset, e.text);
        else
            doc.erase(e.offset, e.length);
    }
    return doc;
}

std::size_t replayed_length(const EditLog& log, std::optional<Timestamp> upto)
{
    std::size_t len = 0;
    for (const auto& e : log.edits) {
        if (upto && e.time > *upto)
            break;
        if (e.kind == EditKind::Insert)
            len += e.text.size();
        else
            len -= e.length;
    }
    return len;
}

} // namespace scriptgrove
