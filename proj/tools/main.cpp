// placeholder; replaced by the real CLI once experiments land
int main() { return 0; }
