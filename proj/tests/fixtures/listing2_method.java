public void setContents(List<Content> contentsBefore, List<Content> contentsAfter) {
    for (int i = 0; i <= contentsAfter.size(); i++) {
        Content content = contentsAfter.get(i);
        if (content instanceof PathContent) {
            paths.add((PathContent) content);
        }
    }
}
