// Placeholder translation unit; the module is implemented incrementally.
namespace w3b {}
