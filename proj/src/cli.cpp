namespace ispace {
}
