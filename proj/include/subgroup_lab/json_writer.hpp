#pragma once

#include <cinttypes>
#include <cstdint>
#include <cstdio>
#include <cmath>
#include <string>
#include <string_view>
#include <vector>

namespace sglab {

// Deterministic JSON emitter: keys keep insertion order and doubles are
// always printed with 17 significant digits, so identical inputs serialize
// to identical bytes on every platform. The vendored json library formats
// doubles with shortest-round-trip instead, which is why output goes through
// this writer.
class JsonWriter {
public:
    std::string str() const { return out_; }

    JsonWriter& begin_object() { open('{'); return *this; }
    JsonWriter& end_object() { close('}'); return *this; }
    JsonWriter& begin_array() { open('['); return *this; }
    JsonWriter& end_array() { close(']'); return *this; }

    JsonWriter& key(std::string_view k) {
        comma();
        write_string(k);
        out_ += ':';
        pending_value_ = true;
        return *this;
    }

    JsonWriter& value(std::string_view s) { comma(); write_string(s); return *this; }
    JsonWriter& value(const char* s) { return value(std::string_view(s)); }
    JsonWriter& value(bool b) { comma(); out_ += b ? "true" : "false"; return *this; }
    JsonWriter& value_null() { comma(); out_ += "null"; return *this; }

    JsonWriter& value(int64_t v) {
        comma();
        char buf[32];
        std::snprintf(buf, sizeof buf, "%" PRId64, v);
        out_ += buf;
        return *this;
    }
    JsonWriter& value(uint64_t v) {
        comma();
        char buf[32];
        std::snprintf(buf, sizeof buf, "%" PRIu64, v);
        out_ += buf;
        return *this;
    }
    JsonWriter& value(int v) { return value(int64_t(v)); }
    JsonWriter& value(uint32_t v) { return value(uint64_t(v)); }

    JsonWriter& value(double v) {
        comma();
        if (!std::isfinite(v)) {
            out_ += "null";
            return *this;
        }
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.17g", v);
        out_ += buf;
        return *this;
    }

    template <class T>
    JsonWriter& kv(std::string_view k, T v) { key(k); return value(v); }

private:
    void open(char c) {
        comma();
        out_ += c;
        depth_.push_back(false);
    }
    void close(char c) {
        out_ += c;
        depth_.pop_back();
        pending_value_ = false;
    }
    void comma() {
        if (pending_value_) {
            pending_value_ = false;
            return;
        }
        if (!depth_.empty()) {
            if (depth_.back()) out_ += ',';
            depth_.back() = true;
        }
    }
    void write_string(std::string_view s) {
        out_ += '"';
        for (char ch : s) {
            switch (ch) {
                case '"': out_ += "\\\""; break;
                case '\\': out_ += "\\\\"; break;
                case '\n': out_ += "\\n"; break;
                case '\t': out_ += "\\t"; break;
                case '\r': out_ += "\\r"; break;
                default:
                    if (static_cast<unsigned char>(ch) < 0x20) {
                        char buf[8];
                        std::snprintf(buf, sizeof buf, "\\u%04x", ch);
                        out_ += buf;
                    } else {
                        out_ += ch;
                    }
            }
        }
        out_ += '"';
    }

    std::string out_;
    std::vector<bool> depth_; // per open container: has at least one item
    bool pending_value_ = false;
};

} // namespace sglab
